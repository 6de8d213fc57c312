"""Oracle-equivalence, privacy-enumeration and algebraic-property suites.

Each suite returns a :class:`SuiteResult`; the CLI and the acceptance tests
both build on these.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from . import oracles
from .algebra import (
    GModule,
    RotateScaleModule,
    SignModule,
    UnitsModule,
    Zmod,
    orbit_weight,
)
from .comparison import drelu_prime, run_drelu, run_fnz, run_sc, sc_prime
from .errors import ConfigurationError
from .protocols import gm, gmr, mot, run_aot, run_gm, run_gmr, run_mot, run_sgm
from .session import run_with_records
from .sharing import GmCorrelation, GmrCorrelation, MotCorrelation, path_key
from .selection import run_relu, run_select_share, run_sss
from .transport import P0, P1, P2, Meter


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    total: int = 0
    label: str = ""
    failures: list = field(default_factory=list)
    p2_online: int = 0

    @property
    def ok(self) -> bool:
        return self.total > 0 and self.passed == self.total and self.p2_online == 0

    def check(self, good: bool, case=None):
        self.total += 1
        if good:
            self.passed += 1
        elif len(self.failures) < 10:
            self.failures.append(case)

    def watch(self, meter: Meter):
        self.p2_online += sum(1 for e in meter.online if P2 in (e.sender, e.receiver))

    def summary(self) -> str:
        label = self.label or f"{self.passed}/{self.total} match"
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {label}"


def _split(x: int, N: int, rng) -> tuple[int, int]:
    r = rng.randrange(N)
    return r, (x - r) % N


# ---------------------------------------------------------------------------
# Comparison family
# ---------------------------------------------------------------------------


def verify_sc(n: int, p: int | None = None, seeds: Iterable[int] = (0, 1, 2), reduced=True,
              trials: int | None = None, seed: int = 0) -> SuiteResult:
    """Exhaustive over all (x, y) pairs for n <= 8, random pairs otherwise.

    A pair counts as a match only if every seed agrees with the oracle.
    """
    p = p or sc_prime(n)
    seeds = list(seeds)
    res = SuiteResult(f"sc n={n} p={p}")
    if n <= 8 and trials is None:
        pairs: Iterable = itertools.product(range(1 << n), repeat=2)
    else:
        rng = random.Random(seed)
        pairs = [(rng.randrange(1 << n), rng.randrange(1 << n)) for _ in range(trials or 1000)]
    for k, (x, y) in enumerate(pairs):
        good = True
        for s in seeds:
            r = run_sc(n, x, y, p, reduced, seed=s * 1_000_003 + k)
            res.watch(r.meter)
            good &= (r.p0 + r.p1) % 2 == oracles.less_than(x, y)
        res.check(good, (x, y))
    return res


def verify_drelu(n: int, p: int | None = None, splits: int = 16, seed: int = 0,
                 trials: int | None = None) -> SuiteResult:
    p = p or drelu_prime(n)
    rng = random.Random(seed)
    N = 1 << n
    res = SuiteResult(f"drelu n={n} p={p}")
    if trials is None:
        cases = [(x, s) for x in range(N) for s in range(splits)]
    else:
        cases = [(rng.randrange(N), 0) for _ in range(trials)]
    for k, (x, _) in enumerate(cases):
        u, v = _split(x, N, rng)
        r = run_drelu(n, u, v, p, seed=seed + k)
        res.watch(r.meter)
        res.check((r.p0 + r.p1) % 2 == oracles.drelu(x, n), (x, u, v))
    if trials is None and res.ok:
        res.label = f"{N}×{splits} match"
    return res


def verify_relu(n: int, p: int | None = None, splits: int = 8, seed: int = 0,
                trials: int | None = None) -> SuiteResult:
    p = p or drelu_prime(n)
    rng = random.Random(seed)
    N = 1 << n
    res = SuiteResult(f"relu n={n} p={p}")
    if trials is None:
        cases = [x for x in range(N) for _ in range(splits)]
    else:
        cases = [rng.randrange(N) for _ in range(trials)]
    for k, x in enumerate(cases):
        u, v = _split(x, N, rng)
        r = run_relu(n, u, v, p, seed=seed + k)
        res.watch(r.meter)
        res.check((r.p0 + r.p1) % N == oracles.relu(x, n), (x, u, v))
    return res


def verify_fnz(n: int, p: int | None = None, seed: int = 0, splits: int = 10) -> SuiteResult:
    """All nonzero 0-1 vectors of length n."""
    p = p or drelu_prime(n)
    rng = random.Random(seed)
    res = SuiteResult(f"fnz n={n} p={p}")
    k = 0
    for bits in itertools.product((0, 1), repeat=n):
        if not any(bits):
            continue
        for _ in range(splits):
            pairs = [_split(b, p, rng) for b in bits]
            r = run_fnz(p, [a for a, _ in pairs], [b for _, b in pairs], seed=seed + k)
            k += 1
            res.watch(r.meter)
            res.check((r.p0 + r.p1) % n == oracles.first_nonzero(bits), bits)
    return res


# ---------------------------------------------------------------------------
# Selection family
# ---------------------------------------------------------------------------


def verify_sss(N: int, seed: int = 0, splits: int = 5) -> SuiteResult:
    """Every (a, z), both share patterns of a, ``splits`` random splits of z."""
    rng = random.Random(seed)
    res = SuiteResult(f"sss N={N}")
    k = 0
    for a, z, a0, _ in itertools.product((0, 1), range(N), (0, 1), range(splits)):
        z0, z1 = _split(z, N, rng)
        r = run_sss(N, z0, z1, a0, a ^ a0, seed=seed + k)
        k += 1
        res.watch(r.meter)
        res.check((r.p0 + r.p1) % N == oracles.select_scale(a, z, N), (a, z, a0))
    return res


def verify_ss(N: int, seed: int = 0, swap_branches=False) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult(f"ss N={N}")
    k = 0
    for a, x, y in itertools.product((0, 1), range(N), range(N)):
        a0 = rng.randrange(2)
        xs, ys = _split(x, N, rng), _split(y, N, rng)
        r = run_select_share(N, xs, ys, (a0, a ^ a0), seed=seed + k, swap_branches=swap_branches)
        k += 1
        res.watch(r.meter)
        want = oracles.select(a, y, x) if swap_branches else oracles.select(a, x, y)
        res.check((r.p0 + r.p1) % N == want, (a, x, y))
    return res


# ---------------------------------------------------------------------------
# Core protocols
# ---------------------------------------------------------------------------


def small_actions() -> list[GModule]:
    """G-modules with module order <= 16 used for exhaustive checks."""
    return [
        SignModule(2), SignModule(5), SignModule(8), SignModule(15), SignModule(16),
        UnitsModule(2), UnitsModule(5), UnitsModule(7), UnitsModule(13),
        RotateScaleModule(1, 5), RotateScaleModule(2, 3), RotateScaleModule(3, 2),
    ]


def large_actions() -> list[GModule]:
    return [SignModule(2**64), SignModule(2**61 - 1), UnitsModule(2**61 - 1), UnitsModule(1009),
            RotateScaleModule(5, 11), RotateScaleModule(8, 7)]


def _gm_ok(action, g, a, seed):
    r = run_gm(action, g, a, seed)
    return r, action.module.add(r.p0, r.p1) == oracles.act(action, g, a)


def _sgm_ok(action, g0, a0, g1, a1, seed):
    r = run_sgm(action, g0, a0, g1, a1, seed)
    return r, action.module.add(r.p0, r.p1) == oracles.shared_act(action, g0, a0, g1, a1)


def _gmr_ok(action, b0, b1, seed):
    A = action.module
    r = run_gmr(action, b0, b1, seed)
    b = A.add(b0, b1)
    return r, oracles.recovered(action, b, r.p0, r.p1)


def verify_core(trials: int = 10_000, seed: int = 0) -> list[SuiteResult]:
    """GM, SGM, GMR, AOT and MoT: exhaustive at small orders plus random trials."""
    rng = random.Random(seed)
    out = {name: SuiteResult(name) for name in ("gm", "sgm", "gmr", "aot", "mot")}
    k = 0

    def record(name, pair, case):
        r, good = pair
        out[name].watch(r.meter)
        out[name].check(good, case)

    # exhaustive
    for action in small_actions():
        G, A = action.group, action.module
        for g, a in itertools.product(G.elements(), A.elements()):
            k += 1
            record("gm", _gm_ok(action, g, a, k), (action, g, a))
        for b0, b1 in itertools.product(A.elements(), repeat=2):
            k += 1
            record("gmr", _gmr_ok(action, b0, b1, k), (action, b0, b1))
        if G.is_abelian and A.order <= 8:
            for g0, a0, g1, a1 in itertools.product(G.elements(), A.elements(), G.elements(), A.elements()):
                k += 1
                record("sgm", _sgm_ok(action, g0, a0, g1, a1, k), (action, g0, a0, g1, a1))
        elif G.is_abelian:
            for _ in range(200):
                args = (G.random(rng), A.random(rng), G.random(rng), A.random(rng))
                k += 1
                record("sgm", _sgm_ok(action, *args, k), (action, *args))
    for n, q in [(2, 2), (3, 5), (4, 4), (5, 3), (8, 2)]:
        B = Zmod(q)
        for i in range(n):
            for g in itertools.product(range(q), repeat=n) if q ** n <= 256 else [tuple(B.random(rng) for _ in range(n)) for _ in range(64)]:
                k += 1
                r = run_aot(n, B, i, g, k)
                record("aot", (r, B.add(r.p0, r.p1) == oracles.index(g, i)), (n, q, i, g))
    for m in range(2, 17):
        for a0, a1 in itertools.product((0, 1), repeat=2):
            k += 1
            r = run_mot(m, a0, a1, k)
            record("mot", (r, (r.p0 + r.p1) % m == oracles.lift_bit(a0 ^ a1, m)), (m, a0, a1))

    # random larger instances
    big = large_actions()
    abelian = [a for a in big if a.group.is_abelian]
    for t in range(trials):
        k += 1
        action = big[t % len(big)]
        G, A = action.group, action.module
        record("gm", _gm_ok(action, G.random(rng), A.random(rng), k), (action, t))
        sa = abelian[t % len(abelian)]
        Gs, As = sa.group, sa.module
        record("sgm", _sgm_ok(sa, Gs.random(rng), As.random(rng), Gs.random(rng), As.random(rng), k), (sa, t))
        record("gmr", _gmr_ok(action, A.random(rng), A.random(rng), k), (action, t))
        n, q = rng.randrange(2, 40), rng.choice((2, 3, 251, 2**32, 2**64))
        B = Zmod(q)
        g = tuple(B.random(rng) for _ in range(n))
        i = rng.randrange(n)
        r = run_aot(n, B, i, g, k)
        record("aot", (r, B.add(r.p0, r.p1) == oracles.index(g, i)), (n, q, i))
        m = rng.randrange(2, 2**40)
        a0, a1 = rng.randrange(2), rng.randrange(2)
        r = run_mot(m, a0, a1, k)
        record("mot", (r, (r.p0 + r.p1) % m == oracles.lift_bit(a0 ^ a1, m)), (m, a0, a1))
    return [out[k] for k in sorted(out)]


# ---------------------------------------------------------------------------
# Privacy: exact view multisets over all dealer randomness
# ---------------------------------------------------------------------------


def _view(result, party, own_input, record) -> tuple:
    corr = record.p0 if party is P0 else record.p1
    msgs = tuple((e.label, e.payload) for e in result.views.get(party, []))
    return (own_input, corr, msgs)


def _views(engine, path, records, in0, in1):
    """Multisets of P0's and P1's views over every record in ``records``."""
    c0, c1 = Counter(), Counter()
    key = path_key(path)
    for rec in records:
        r = run_with_records(engine, in0, in1, {key: rec})
        c0[_view(r, P0, in0, rec)] += 1
        c1[_view(r, P1, in1, rec)] += 1
    return c0, c1


def _all_equal(counters: list[Counter]) -> bool:
    return all(c == counters[0] for c in counters[1:])


def gm_records(action: GModule):
    spec = GmCorrelation(action)
    G, A = action.group, action.module
    for h, u0, b in itertools.product(G.elements(), A.elements(), A.elements()):
        yield spec.assemble((h, u0), (G.identity, b))


def gmr_records(action: GModule):
    spec = GmrCorrelation(action)
    G, A = action.group, action.module
    for g, v0, u in itertools.product(G.elements(), A.elements(), A.elements()):
        yield spec.assemble((g, v0), (u, A.zero))


def mot_records(m: int):
    spec = MotCorrelation(m)
    for u0, b0, u1 in itertools.product((0, 1), range(m), (0, 1)):
        yield spec.assemble((u0, b0), (u1, 0))


def privacy_gm(action: GModule) -> SuiteResult:
    """P0's view must not depend on a; P1's view must not depend on g."""
    res = SuiteResult(f"privacy gm {action.group}/{action.module}")
    G, A = action.group, action.module
    records = list(gm_records(action))
    engine = lambda ctx, v: gm(ctx, action, v)  # noqa: E731
    table = {(g, a): _views(engine, ("gm",), records, g, a) for g in G.elements() for a in A.elements()}
    for g in G.elements():
        res.check(_all_equal([table[g, a][0] for a in A.elements()]), ("P0", g))
    for a in A.elements():
        res.check(_all_equal([table[g, a][1] for g in G.elements()]), ("P1", a))
    return res


def privacy_gmr(action: GModule) -> SuiteResult:
    """Given its own share and the public orbit, neither view depends on the other share."""
    res = SuiteResult(f"privacy gmr {action.group}/{action.module}")
    A = action.module
    records = list(gmr_records(action))
    elems = list(A.elements())
    views = {}
    for b0, b1 in itertools.product(elems, repeat=2):
        orbit = action.orbit(A.add(b0, b1))
        engine = lambda ctx, v, o=orbit: gmr(ctx, action, v, o)  # noqa: E731
        views[b0, b1] = _views(engine, ("gmr",), records, b0, b1)
    for party, idx in ((P0, 0), (P1, 1)):
        groups: dict = {}
        for (b0, b1), pair in views.items():
            own = b0 if party is P0 else b1
            groups.setdefault((own, action.orbit(A.add(b0, b1))), []).append(pair[idx])
        for key, cs in sorted(groups.items(), key=repr):
            res.check(_all_equal(cs), (party.name, key))
    return res


def privacy_mot(m: int = 3) -> SuiteResult:
    res = SuiteResult(f"privacy mot m={m}")
    records = list(mot_records(m))
    engine = lambda ctx, v: mot(ctx, m, v)  # noqa: E731
    views = {(a0, a1): _views(engine, ("mot",), records, a0, a1) for a0 in (0, 1) for a1 in (0, 1)}
    for a0 in (0, 1):
        res.check(_all_equal([views[a0, a1][0] for a1 in (0, 1)]), ("P0", a0))
    for a1 in (0, 1):
        res.check(_all_equal([views[a0, a1][1] for a0 in (0, 1)]), ("P1", a1))
    return res


def verify_privacy() -> list[SuiteResult]:
    return [
        privacy_gm(SignModule(5)),
        privacy_gm(UnitsModule(5)),
        privacy_gmr(SignModule(5)),
        privacy_gmr(UnitsModule(5)),
        privacy_mot(3),
    ]


# ---------------------------------------------------------------------------
# Algebraic properties
# ---------------------------------------------------------------------------


def verify_properties() -> list[SuiteResult]:
    """Module axioms on small actions, and orbits of the rotate-scale action."""
    axioms = SuiteResult("module axioms")
    for action in small_actions():
        G, A = action.group, action.module
        gs, ms = list(G.elements()), list(A.elements())
        for m in ms:
            axioms.check(action.act(G.identity, m) == m, (action, "identity", m))
        for g, h, m in itertools.product(gs[:12], gs[:12], ms):
            axioms.check(action.act(G.mul(g, h), m) == action.act(g, action.act(h, m)), (action, "compat"))
        for g, m1, m2 in itertools.product(gs[:12], ms, ms):
            axioms.check(
                action.act(g, A.add(m1, m2)) == A.add(action.act(g, m1), action.act(g, m2)), (action, "distrib")
            )
    # Weight is always invariant.  The orbit is the whole weight class only for
    # weights 0, 1, n-1, n (with p >= 3); in between, zero patterns that are not
    # rotations of each other stay apart.  FNZ only relies on weight n-1.
    orbits = SuiteResult("rotate-scale orbits vs Hamming weight")
    for n, p in [(1, 5), (2, 3), (3, 5), (4, 3), (5, 3), (4, 2)]:
        action = RotateScaleModule(n, p)
        A = action.module
        for x in A.elements():
            w = orbit_weight(x)
            reach = {action.act(g, x) for g in action.group.elements()}
            orbits.check(all(orbit_weight(y) == w for y in reach), (n, p, x, "invariant"))
            if p >= 3 and w in (0, 1, n - 1, n):
                same_weight = {y for y in A.elements() if orbit_weight(y) == w}
                orbits.check(reach == same_weight, (n, p, x, "transitive"))
    return [axioms, orbits]


# ---------------------------------------------------------------------------
# Dispatch used by the CLI
# ---------------------------------------------------------------------------


def run_suite(protocol: str, n: int | None = None, N: int | None = None, p: int | None = None,
              trials: int | None = None, seed: int = 0, reduced: bool = True) -> list[SuiteResult]:
    def need(v, name):
        if v is None:
            raise ConfigurationError(f"--{name} is required for {protocol}")
        return v

    if protocol == "sc":
        return [verify_sc(need(n, "n"), p, seeds=(seed, seed + 1, seed + 2), reduced=reduced,
                          trials=trials, seed=seed)]
    if protocol == "drelu":
        if trials is None and need(n, "n") > 12:
            trials = 1000
        return [verify_drelu(need(n, "n"), p, seed=seed, trials=trials)]
    if protocol == "relu":
        if trials is None and need(n, "n") > 10:
            trials = 1000
        return [verify_relu(need(n, "n"), p, seed=seed, trials=trials)]
    if protocol == "fnz":
        return [verify_fnz(need(n, "n"), p, seed=seed)]
    if protocol == "sss":
        return [verify_sss(need(N, "modulus"), seed)]
    if protocol == "ss":
        return [verify_ss(need(N, "modulus"), seed)]
    if protocol in ("gm", "sgm", "gmr", "aot", "mot", "core"):
        suites = verify_core(trials if trials is not None else 1000, seed)
        return suites if protocol == "core" else [s for s in suites if s.name == protocol]
    if protocol == "privacy":
        return verify_privacy()
    if protocol == "properties":
        return verify_properties()
    if protocol == "all":
        out = verify_core(trials if trials is not None else 1000, seed)
        out += [verify_sc(4, seeds=(seed,)), verify_drelu(6, splits=4, seed=seed), verify_relu(6, splits=2, seed=seed),
                verify_fnz(4), verify_sss(15), verify_sss(16), verify_ss(5), verify_ss(6)]
        return out + verify_privacy() + verify_properties()
    raise ConfigurationError(f"unknown protocol {protocol!r}")


VERIFY_PROTOCOLS = ("all", "core", "gm", "sgm", "gmr", "aot", "mot", "fnz", "sc", "drelu", "relu",
                    "sss", "ss", "privacy", "properties")
