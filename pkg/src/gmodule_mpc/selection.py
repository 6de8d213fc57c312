"""Select-share and ReLU on top of the shared sign action."""

from __future__ import annotations

from .algebra import SignModule
from .comparison import deal_drelu, drelu, drelu_prime
from .errors import ConfigurationError
from .protocols import deal_sgm, sgm
from .session import RunResult, Session
from .transport import P0, Sync


def sign_action_for(N: int) -> SignModule:
    """Odd N works over Z/N; even N lifts to Z/2N so halving stays exact."""
    if N < 2:
        raise ConfigurationError(f"modulus must be >= 2, got {N}")
    return SignModule(N if N % 2 else 2 * N)


def deal_sss(dealer, N: int, path=("sss",)):
    return deal_sgm(dealer, sign_action_for(N), path + ("sgm",))


def sss(ctx, N: int, value, path=("sss",)):
    """``(z_i, a_i)`` shares over Z/N and F_2 in, shares of ``a * z`` over Z/N out.

    Uses ``a z = (z - (-1)^a z) / 2``.
    """
    z, a = value
    action = sign_action_for(N)
    sign = -1 if a % 2 else 1
    # even N: z_i read as its representative in [0, N) inside Z/2N
    u = yield from sgm(ctx, action, (sign, z), path + ("sgm",))
    if N % 2:
        return (z - u) * ((N + 1) // 2) % N
    s = (z - u) % (2 * N)
    # s0 + s1 is even and the parities match, so floor + ceil halves exactly
    half = s // 2 if ctx.party is P0 else -(-s // 2)
    return half % N


def deal_select_share(dealer, N: int, path=("ss",)):
    return deal_sss(dealer, N, path)


def select_share(ctx, N: int, value, path=("ss",), swap_branches=False):
    """Shares of ``x``, ``y`` and bit ``a`` in; shares of ``x if a else y`` out.

    ``swap_branches`` flips to ``a (y - x) + x``, i.e. ``y if a else x``.
    """
    x, y, a = value
    if swap_branches:
        x, y = y, x
    z = (x - y) % N
    v = yield from sss(ctx, N, (z, a), path)
    return (v + y) % N


def deal_relu(dealer, n: int, p: int | None = None, path=("relu",)):
    deal_drelu(dealer, n, p, path + ("drelu",))
    deal_sss(dealer, 1 << n, path + ("sss",))


def relu(ctx, n: int, p: int | None, share: int, path=("relu",)):
    """Shares of x over Z/2^n in, shares of ReLU(x) (two's complement) out."""
    b = yield from drelu(ctx, n, p, share, path + ("drelu",))
    yield Sync()
    return (yield from sss(ctx, 1 << n, (share, b), path + ("sss",)))


def run_sss(N: int, z0: int, z1: int, a0: int, a1: int, seed: int = 0) -> RunResult:
    s = Session(seed)
    deal_sss(s.dealer, N)
    return s.run(lambda ctx, v: sss(ctx, N, v), (z0, a0), (z1, a1))


def run_select_share(N: int, x, y, a, seed: int = 0, swap_branches=False) -> RunResult:
    """``x``, ``y``, ``a`` are share pairs ``(P0 part, P1 part)``."""
    s = Session(seed)
    deal_select_share(s.dealer, N)
    return s.run(
        lambda ctx, v: select_share(ctx, N, v, swap_branches=swap_branches),
        (x[0], y[0], a[0]),
        (x[1], y[1], a[1]),
    )


def run_relu(n: int, u: int, v: int, p: int | None = None, seed: int = 0) -> RunResult:
    if n < 2:
        raise ConfigurationError("ReLU needs n >= 2")
    p = p or drelu_prime(n)
    s = Session(seed)
    deal_relu(s.dealer, n, p)
    return s.run(lambda ctx, val: relu(ctx, n, p, val), u, v)
