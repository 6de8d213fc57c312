"""The five base protocols: GM, SGM, GMR, AOT and MoT.

Each engine is a generator run by both P0 and P1; ``ctx.party`` selects the
role.  ``deal_*`` functions perform the dealer's offline step for the same
``path`` the engine later asks for.
"""

from __future__ import annotations

from typing import Generator

from .algebra import AbelianGroup, GModule, MapSpace, Zmod
from .errors import MalformedInputError, ProtocolLogicError
from .session import RunResult, Session
from .sharing import (
    F2,
    AotCorrelation,
    GmCorrelation,
    GmrCorrelation,
    MotCorrelation,
    SgmCorrelation,
)
from .transport import P0, P1, Recv, Send


def parallel(engines: list[Generator]):
    """Run sub-engines side by side so their first messages share a round.

    Every sub-engine is advanced until it blocks on a receive before any
    receive is handed to the scheduler.
    """
    engines = list(engines)
    results = [None] * len(engines)
    values = [None] * len(engines)
    started = [False] * len(engines)
    live = list(range(len(engines)))
    while live:
        waiting = {}
        for i in live:
            gen = engines[i]
            while True:
                try:
                    op = gen.send(values[i]) if started[i] else next(gen)
                except StopIteration as stop:
                    results[i] = stop.value
                    break
                started[i] = True
                values[i] = None
                if isinstance(op, Send):
                    yield op
                elif isinstance(op, Recv):
                    waiting[i] = op
                    break
                else:
                    raise ProtocolLogicError("stage barrier inside a parallel block")
        live = sorted(waiting)
        for i in live:
            values[i] = yield waiting[i]
    return results


# ---------------------------------------------------------------------------
# G-module action
# ---------------------------------------------------------------------------


def deal_gm(dealer, action: GModule, path=("gm",)):
    return dealer.deal(GmCorrelation(action), path)


def gm(ctx, action: GModule, value, path=("gm",)):
    """P0 inputs g, P1 inputs a; returns the caller's share of g·a."""
    G, A = action.group, action.module
    if ctx.party is P0:
        g = value
        h, u0 = ctx.correlation(GmCorrelation(action), path)
        f = G.mul(g, G.inv(h))
        yield Send(P1, path, "f", f, G)
        c = yield Recv(P1, path, "c")
        return A.add(action.act(g, c), action.act(f, u0))
    b, u1 = ctx.correlation(GmCorrelation(action), path)
    c = A.sub(A.check(value), b)
    yield Send(P0, path, "c", c, A)
    f = yield Recv(P0, path, "f")
    return action.act(f, u1)


# ---------------------------------------------------------------------------
# Shared G-module action
# ---------------------------------------------------------------------------


def deal_sgm(dealer, action: GModule, path=("sgm",)):
    return dealer.deal(SgmCorrelation(action), path)


def sgm(ctx, action: GModule, value, path=("sgm",)):
    """Each party inputs ``(g_i, a_i)``; shares of ``g0 g1 (a0 + a1)`` come out."""
    G, A = action.group, action.module
    spec = SgmCorrelation(action)
    g, a = value
    h, b, u = ctx.correlation(spec, path)
    me, other = (P0, P1) if ctx.party is P0 else (P1, P0)
    f_mine = G.mul(g, G.inv(h))
    c_mine = action.act(g, A.sub(a, b))
    yield Send(other, path, f"f{me.value}", f_mine, G)
    yield Send(other, path, f"c{me.value}", c_mine, A)
    f_other = yield Recv(other, path, f"f{other.value}")
    c_other = yield Recv(other, path, f"c{other.value}")
    f = G.mul(f_mine, f_other) if me is P0 else G.mul(f_other, f_mine)
    return A.add(action.act(g, c_other), action.act(f, u))


# ---------------------------------------------------------------------------
# G-module recover
# ---------------------------------------------------------------------------


def deal_gmr(dealer, action: GModule, path=("gmr",)):
    return dealer.deal(GmrCorrelation(action), path)


def gmr(ctx, action: GModule, share, orbit=None, path=("gmr",)):
    """Shares of b in, P0 gets g and P1 gets a in the orbit of b with g·a = b.

    ``orbit`` is the public orbit label; the protocol itself never reads it.
    """
    G, A = action.group, action.module
    spec = GmrCorrelation(action)
    if ctx.party is P0:
        g, v0 = ctx.correlation(spec, path)
        c1 = yield Recv(P1, path, "c1")
        w = action.act(G.inv(g), A.add(A.sub(share, v0), c1))
        yield Send(P1, path, "w", w, A)
        return g
    u, v1 = ctx.correlation(spec, path)
    yield Send(P0, path, "c1", A.sub(share, v1), A)
    w = yield Recv(P0, path, "w")
    return A.add(w, u)


# ---------------------------------------------------------------------------
# Assistant OT
# ---------------------------------------------------------------------------


def deal_aot(dealer, domain_size: int, codomain: AbelianGroup, path=("aot",), fixed_index=None):
    return dealer.deal(AotCorrelation(domain_size, codomain, fixed_index), path)


def aot(ctx, domain_size: int, codomain: AbelianGroup, value, path=("aot",), reduced=False):
    """P0 inputs an index i, P1 a map g; shares of g(i) over ``codomain``.

    In reduced mode the dealer already used P0's index as its offset, so the
    shift is zero and P0 sends nothing.
    """
    index_space = Zmod(domain_size)
    maps = MapSpace(domain_size, codomain)
    if ctx.party is P0:
        i = value
        if not index_space.contains(i):
            raise MalformedInputError(f"index {i!r} outside Z/{domain_size}")
        spec = AotCorrelation(domain_size, codomain, i if reduced else None)
        i_tilde, a0 = ctx.correlation(spec, path)
        if not reduced:
            yield Send(P1, path, "k", index_space.sub(i, i_tilde), index_space)
        h = yield Recv(P1, path, "h")
        return codomain.add(maps.evaluate(h, i_tilde), a0)
    g = maps.check(tuple(value))
    f, a1 = ctx.correlation(AotCorrelation(domain_size, codomain), path)
    k = 0 if reduced else (yield Recv(P0, path, "k"))
    h = maps.sub(maps.shift(g, k), f)
    yield Send(P0, path, "h", h, maps)
    return a1


# ---------------------------------------------------------------------------
# Module transform F_2 -> Z/m
# ---------------------------------------------------------------------------


def deal_mot(dealer, m: int, path=("mot",)):
    return dealer.deal(MotCorrelation(m), path)


def mot(ctx, m: int, share: int, path=("mot",)):
    """Shares of a bit over F_2 in, shares of the same 0/1 value over Z/m out."""
    u, b = ctx.correlation(MotCorrelation(m), path)
    other = P1 if ctx.party is P0 else P0
    z_mine = (share - u) % 2
    yield Send(other, path, f"z{ctx.party.value}", z_mine, F2)
    z_other = yield Recv(other, path, f"z{other.value}")
    z = (z_mine + z_other) % 2
    y = b if z == 0 else -b % m
    if ctx.party is P1:
        y = (y + z) % m
    return y


# ---------------------------------------------------------------------------
# One-call runners
# ---------------------------------------------------------------------------


def run_gm(action: GModule, g, a, seed: int = 0) -> RunResult:
    s = Session(seed)
    deal_gm(s.dealer, action)
    return s.run(lambda ctx, v: gm(ctx, action, v), g, a)


def run_sgm(action: GModule, g0, a0, g1, a1, seed: int = 0) -> RunResult:
    s = Session(seed)
    deal_sgm(s.dealer, action)
    return s.run(lambda ctx, v: sgm(ctx, action, v), (g0, a0), (g1, a1))


def run_gmr(action: GModule, b0, b1, seed: int = 0) -> RunResult:
    A = action.module
    orbit = action.orbit(A.add(b0, b1))
    s = Session(seed)
    deal_gmr(s.dealer, action)
    return s.run(lambda ctx, v: gmr(ctx, action, v, orbit), b0, b1)


def run_aot(domain_size: int, codomain: AbelianGroup, i: int, g, seed: int = 0) -> RunResult:
    s = Session(seed)
    deal_aot(s.dealer, domain_size, codomain)
    return s.run(lambda ctx, v: aot(ctx, domain_size, codomain, v), i, tuple(g))


def run_mot(m: int, a0: int, a1: int, seed: int = 0) -> RunResult:
    s = Session(seed)
    deal_mot(s.dealer, m)
    return s.run(lambda ctx, v: mot(ctx, m, v), a0, a1)

