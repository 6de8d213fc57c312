import itertools
import random
from math import log2

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmodule_mpc import oracles
from gmodule_mpc.algebra import RotateScaleModule, SignModule, UnitsModule, Zmod, orbit_weight
from gmodule_mpc.errors import MalformedInputError, ProtocolLogicError
from gmodule_mpc.protocols import parallel, run_aot, run_gm, run_gmr, run_mot, run_sgm
from gmodule_mpc.sharing import F2
from gmodule_mpc.transport import Sync


def rec(action, r):
    return action.module.add(r.p0, r.p1)


def test_gm_examples():
    a = UnitsModule(5)
    assert rec(a, run_gm(a, 1, 3)) == 3
    assert rec(a, run_gm(a, 2, 3)) == 1


def test_gm_exhaustive_units7_ten_correlations():
    a = UnitsModule(7)
    for g, x in itertools.product(a.group.elements(), a.module.elements()):
        for seed in range(10):
            assert rec(a, run_gm(a, g, x, seed)) == oracles.act(a, g, x)


def test_gm_semidirect_nonabelian():
    a = RotateScaleModule(4, 7)
    rng = random.Random(4)
    for seed in range(50):
        g, x = a.group.random(rng), a.module.random(rng)
        assert rec(a, run_gm(a, g, x, seed)) == a.act(g, x)


def test_sgm_examples():
    s = SignModule(9)
    assert rec(s, run_sgm(s, 1, 4, 1, 2)) == 6
    assert rec(s, run_sgm(s, -1, 4, 1, 2)) == 3


def test_gmr_examples():
    s = SignModule(5)
    r = run_gmr(s, 0, 0)
    assert r.p1 == 0
    for seed in range(20):
        r = run_gmr(s, 1, 1, seed)
        assert r.p1 in (2, 3) and s.act(r.p0, r.p1) == 2


def test_gmr_semidirect_weight3():
    a = RotateScaleModule(4, 7)
    A = a.module
    rng = random.Random(11)
    for seed in range(50):
        b = list(1 + rng.randrange(6) for _ in range(4))
        b[rng.randrange(4)] = 0
        b = tuple(b)
        b0 = A.random(rng)
        r = run_gmr(a, b0, A.sub(b, b0), seed)
        assert a.act(r.p0, r.p1) == b
        assert orbit_weight(r.p1) == 3


def test_aot_examples():
    assert rec_aot(4, F2, 2, (0, 1, 1, 0)) == 1
    for i in range(5):
        assert rec_aot(5, Zmod(9), i, (4,) * 5) == 4


def rec_aot(n, B, i, g, seed=0):
    r = run_aot(n, B, i, g, seed)
    return B.add(r.p0, r.p1)


def test_aot_exhaustive_small():
    B = Zmod(3)
    for g in itertools.product(range(3), repeat=3):
        for i in range(3):
            assert rec_aot(3, B, i, g, i) == g[i]


def test_aot_rejects_bad_index():
    with pytest.raises(MalformedInputError):
        run_aot(4, F2, 4, (0, 1, 1, 0))
    with pytest.raises(MalformedInputError):
        run_aot(4, F2, 0, (0, 1, 2, 0))


def test_aot_unreduced_cost():
    r = run_aot(8, Zmod(16), 3, tuple(range(8)))
    assert r.meter.online_rounds == 2
    assert r.meter.online_bits == pytest.approx(3 + 8 * 4)
    assert r.meter.offline_bits == pytest.approx(4)


def test_mot_examples():
    assert sum(run_mot(7, 0, 0).outputs) % 7 == 0
    assert sum(run_mot(7, 1, 1).outputs) % 7 == 0
    for m in (5, 16):
        for a0, a1 in itertools.product((0, 1), repeat=2):
            for seed in range(4):
                assert sum(run_mot(m, a0, a1, seed).outputs) % m == (a0 ^ a1)


def test_gm_rejects_foreign_module_element():
    with pytest.raises(MalformedInputError):
        run_gm(UnitsModule(5), 2, 7)


def test_parallel_rejects_barrier():
    def stage():
        yield Sync()

    gen = parallel([stage()])
    with pytest.raises(ProtocolLogicError):
        next(gen)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([SignModule(2**64), SignModule(1001), UnitsModule(2**31 - 1), UnitsModule(101)]),
       st.integers(0, 2**32), st.integers(0, 2**16))
def test_gm_and_sgm_property(action, draw, seed):
    rng = random.Random(draw)
    G, A = action.group, action.module
    g, x = G.random(rng), A.random(rng)
    assert rec(action, run_gm(action, g, x, seed)) == action.act(g, x)
    g0, a0, g1, a1 = G.random(rng), A.random(rng), G.random(rng), A.random(rng)
    assert rec(action, run_sgm(action, g0, a0, g1, a1, seed)) == oracles.shared_act(action, g0, a0, g1, a1)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 20), st.sampled_from([2, 3, 2**32]), st.integers(0, 2**32))
def test_aot_property(n, q, draw):
    rng = random.Random(draw)
    B = Zmod(q)
    g = tuple(B.random(rng) for _ in range(n))
    i = rng.randrange(n)
    r = run_aot(n, B, i, g, draw)
    assert B.add(r.p0, r.p1) == g[i]
    assert r.meter.online_bits == pytest.approx(log2(n) + n * log2(q))
