import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmodule_mpc.comparison import (
    drelu_prime,
    fnz_masked_vector,
    msb_bits,
    run_drelu,
    run_fnz,
    run_sc,
    sc_prime,
)
from gmodule_mpc.errors import ConfigurationError, CorruptedInputError, MalformedInputError
from gmodule_mpc.verification import verify_fnz


def share_vector(bits, p, rng):
    s0 = [rng.randrange(p) for _ in bits]
    return s0, [(b - r) % p for b, r in zip(bits, s0)]


def fnz_index(bits, p, seed=0):
    s0, s1 = share_vector(bits, p, random.Random(seed))
    r = run_fnz(p, s0, s1, seed)
    return (r.p0 + r.p1) % len(bits)


def test_fnz_examples():
    assert fnz_index((1, 0, 0, 0), 7) == 0
    assert fnz_index((0, 0, 1, 0, 1), 7) == 2


def test_fnz_exhaustive_n4():
    res = verify_fnz(4, 7, splits=10)
    assert res.ok and res.total == 150


def test_fnz_masked_vector_unique_zero():
    # z_i = prefix_i - 2 u_i + 1 vanishes exactly at the first one
    p = 7
    for bits in itertools.product((0, 1), repeat=5):
        if any(bits):
            z = fnz_masked_vector(bits, p, True)
            assert [i for i, v in enumerate(z) if v == 0] == [bits.index(1)]


def test_fnz_errors():
    with pytest.raises(ConfigurationError):
        run_fnz(5, (0, 0, 0, 0), (1, 0, 0, 0))
    with pytest.raises(CorruptedInputError):
        run_fnz(7, (0, 0, 0, 0), (0, 0, 0, 0))


def test_fnz_costs_two_rounds():
    r = run_fnz(7, (1, 0, 0, 0), (0, 0, 0, 0))
    assert r.meter.online_rounds == 2


def sc_bit(n, x, y, **kw):
    r = run_sc(n, x, y, **kw)
    return (r.p0 + r.p1) % 2


def test_sc_examples():
    assert sc_bit(4, 5, 9) == 1
    assert sc_bit(4, 11, 11) == 0
    assert sc_bit(4, 9, 5) == 0
    assert sc_bit(1, 0, 1) == 1


def test_sc_exhaustive_n4_both_modes():
    for reduced in (True, False):
        for x, y in itertools.product(range(16), repeat=2):
            assert sc_bit(4, x, y, reduced=reduced, seed=x * 16 + y) == int(x < y)


def test_sc_rounds():
    assert run_sc(8, 3, 200).meter.online_rounds == 4
    assert run_sc(8, 3, 200, reduced=False).meter.online_rounds == 5


def test_sc_prime_checks():
    assert sc_prime(6) == 11 and sc_prime(32) == 37
    assert drelu_prime(8) == 11 and drelu_prime(64) == 67
    with pytest.raises(ConfigurationError):
        run_sc(6, 1, 2, p=7)
    with pytest.raises(MalformedInputError):
        run_sc(4, 16, 2)


def test_msb_bits():
    assert msb_bits(5, 4) == [0, 1, 0, 1]
    with pytest.raises(MalformedInputError):
        msb_bits(-1, 4)


def drelu_bit(n, x, seed=0, **kw):
    N = 1 << n
    u = random.Random(seed).randrange(N)
    r = run_drelu(n, u, (x - u) % N, seed=seed, **kw)
    return (r.p0 + r.p1) % 2


def test_drelu_examples():
    assert drelu_bit(8, 5) == 1
    assert drelu_bit(8, 200) == 0
    for s in range(16):
        assert drelu_bit(8, 127, s) == 1
        assert drelu_bit(8, 128, s) == 0


def test_drelu_small_widths():
    for n in (2, 3):
        for x in range(1 << n):
            for s in range(4):
                assert drelu_bit(n, x, s) == int(x < 1 << (n - 1))


def test_drelu_unreduced():
    for x in (0, 100, 127, 128, 255):
        assert drelu_bit(8, x, reduced=False) == int(x < 128)


def test_drelu_needs_two_bits():
    with pytest.raises(ConfigurationError):
        run_drelu(1, 0, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.data())
def test_sc_property(n, data):
    x = data.draw(st.integers(0, (1 << n) - 1))
    y = data.draw(st.integers(0, (1 << n) - 1))
    assert sc_bit(n, x, y, seed=x ^ y) == int(x < y)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 64), st.data())
def test_drelu_property(n, data):
    x = data.draw(st.integers(0, (1 << n) - 1))
    assert drelu_bit(n, x, seed=n) == int(x < 1 << (n - 1))
