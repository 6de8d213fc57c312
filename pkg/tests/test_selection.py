import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmodule_mpc.errors import ConfigurationError
from gmodule_mpc.selection import run_relu, run_select_share, run_sss, sign_action_for


def sss_value(N, a_pair, z, seed=0):
    z0 = random.Random(seed).randrange(N)
    r = run_sss(N, z0, (z - z0) % N, *a_pair, seed=seed)
    return (r.p0 + r.p1) % N


def ss_value(N, a, x, y, seed=0, **kw):
    rng = random.Random(seed)
    x0, y0, a0 = rng.randrange(N), rng.randrange(N), rng.randrange(2)
    r = run_select_share(N, (x0, (x - x0) % N), (y0, (y - y0) % N), (a0, a ^ a0), seed=seed, **kw)
    return (r.p0 + r.p1) % N


def test_sss_examples():
    assert sss_value(15, (0, 0), 11) == 0
    assert sss_value(16, (1, 0), 9) == 9


@pytest.mark.parametrize("N", [2, 3, 15, 16])
def test_sss_all_share_patterns(N):
    for a0 in (0, 1):
        for a1 in (0, 1):
            for z in range(N):
                assert sss_value(N, (a0, a1), z, seed=z) == (a0 ^ a1) * z % N


def test_ss_examples():
    assert ss_value(15, 1, 7, 3) == 7
    assert ss_value(15, 0, 7, 3) == 3


def test_ss_flipped_formula_flag():
    assert ss_value(15, 1, 7, 3, swap_branches=True) == 3
    assert ss_value(15, 0, 7, 3, swap_branches=True) == 7


def test_ss_exhaustive_16():
    for a in (0, 1):
        for x in range(16):
            for y in range(16):
                assert ss_value(16, a, x, y, seed=x * 16 + y) == (x if a else y)


def test_sign_action_lift():
    assert sign_action_for(15).N == 15
    assert sign_action_for(16).N == 32
    with pytest.raises(ConfigurationError):
        sign_action_for(1)


def relu_value(n, x, seed=0):
    N = 1 << n
    u = random.Random(seed).randrange(N)
    r = run_relu(n, u, (x - u) % N, seed=seed)
    return (r.p0 + r.p1) % N


def test_relu_examples():
    assert relu_value(8, 5) == 5
    assert relu_value(8, 200) == 0
    assert relu_value(8, 127) == 127
    assert relu_value(8, 128) == 0


def test_relu_costs():
    r = run_relu(8, 3, 4)
    assert r.meter.online_rounds == 5


def test_relu_needs_two_bits():
    with pytest.raises(ConfigurationError):
        run_relu(1, 0, 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 64), st.data())
def test_relu_property(n, data):
    x = data.draw(st.integers(0, (1 << n) - 1))
    want = x if x < 1 << (n - 1) else 0
    assert relu_value(n, x, seed=n) == want


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 2**128), st.integers(0, 1), st.data())
def test_ss_property_large_moduli(N, a, data):
    x = data.draw(st.integers(0, N - 1))
    y = data.draw(st.integers(0, N - 1))
    assert ss_value(N, a, x, y, seed=a) == (x if a else y)
