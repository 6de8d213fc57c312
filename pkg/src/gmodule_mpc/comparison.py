"""First-nonzero index, secure comparison and DReLU."""

from __future__ import annotations

from .algebra import RotateScaleModule, circular_left_shift, least_prime_at_least
from .errors import ConfigurationError, CorruptedInputError, MalformedInputError
from .protocols import aot, deal_aot, deal_gmr, deal_mot, gmr, mot, parallel
from .session import RunResult, Session
from .sharing import F2
from .transport import P0, Sync


def fnz_masked_vector(share, p: int, add_one: bool) -> tuple:
    """Local step of FNZ: this party's share of ``z_i = v_i - 2 u_i + 1``.

    ``v`` is the prefix sum of ``u``; only one party adds the constant.
    """
    out, running = [], 0
    for u in share:
        running += u
        out.append((running - 2 * u + (1 if add_one else 0)) % p)
    return tuple(out)


def deal_fnz(dealer, p: int, n: int, path=("fnz",)):
    return deal_gmr(dealer, RotateScaleModule(n, p), path + ("gmr",))


def fnz(ctx, p: int, share, path=("fnz",)):
    """Shares of a nonzero 0-1 vector over F_p in, shares of its first-one index over Z/n out."""
    share = tuple(share)
    n = len(share)
    if p < n + 2:
        raise ConfigurationError(f"first-nonzero search over {n} coordinates needs p >= {n + 2}, got {p}")
    action = RotateScaleModule(n, p)
    z = fnz_masked_vector(share, p, ctx.party is P0)
    out = yield from gmr(ctx, action, z, orbit=n - 1, path=path + ("gmr",))
    if ctx.party is P0:
        rotation, _ = out
        # z = T_c L_i(w): a zero of w at j shows up in z at j - i
        return -rotation % n
    zeros = [j for j, x in enumerate(out) if x == 0]
    if len(zeros) != 1:
        raise CorruptedInputError(f"recovered vector has {len(zeros)} zeros; input was not a nonzero 0-1 vector")
    return zeros[0]


def msb_bits(x: int, n: int) -> list[int]:
    if not 0 <= x < 1 << n:
        raise MalformedInputError(f"{x} does not fit in {n} bits")
    return [(x >> (n - 1 - i)) & 1 for i in range(n)]


def _check_sc_prime(n: int, p: int):
    if n < 1:
        raise ConfigurationError("bit width must be positive")
    if p < n + 3:
        raise ConfigurationError(f"secure comparison of {n}-bit values needs a prime p >= {n + 3}, got {p}")


def deal_sc(dealer, n: int, p: int, path=("sc",), reduced=True):
    _check_sc_prime(n, p)
    for i in range(n):
        deal_mot(dealer, p, path + (f"mot#{i}",))
    record = deal_fnz(dealer, p, n + 1, path + ("fnz",))
    # P0's FNZ output is the negated rotation of its GMR group element
    fixed = -record.p0[0][0] % (n + 1) if reduced else None
    deal_aot(dealer, n + 1, F2, path + ("aot",), fixed_index=fixed)


def secure_compare(ctx, n: int, p: int, value: int, path=("sc",), reduced=True):
    """P0 inputs x, P1 inputs y (both n-bit); shares of ``x < y`` over F_2."""
    _check_sc_prime(n, p)
    bits = msb_bits(value, n)
    u = yield from parallel(mot(ctx, p, bits[i], path + (f"mot#{i}",)) for i in range(n))
    yield Sync()
    # sentinel coordinate: x_n = 1, y_n = 0, so u_n = 1 via public shares (1, 0)
    sentinel = 1 if ctx.party is P0 else 0
    bits.append(sentinel)
    u.append(sentinel)
    index = yield from fnz(ctx, p, u, path + ("fnz",))
    yield Sync()
    if ctx.party is P0:
        return (yield from aot(ctx, n + 1, F2, index, path + ("aot",), reduced))
    rotated = circular_left_shift(tuple(bits), index)
    return (yield from aot(ctx, n + 1, F2, rotated, path + ("aot",), reduced))


def drelu_prime(n: int) -> int:
    return least_prime_at_least(n + 2)


def sc_prime(n: int) -> int:
    return least_prime_at_least(n + 3)


def deal_drelu(dealer, n: int, p: int | None = None, path=("drelu",), reduced=True):
    if n < 2:
        raise ConfigurationError("DReLU needs n >= 2")
    deal_sc(dealer, n - 1, p or drelu_prime(n), path + ("sc",), reduced)


def drelu(ctx, n: int, p: int | None, share: int, path=("drelu",), reduced=True):
    """Shares of x over Z/2^n in, shares of ``x < 2^(n-1)`` over F_2 out."""
    if n < 2:
        raise ConfigurationError("DReLU needs n >= 2")
    p = p or drelu_prime(n)
    half = 1 << (n - 1)
    low, top = share % half, (share >> (n - 1)) & 1
    # carry of low(u) + low(v) is (2^(n-1) - 1 - low(u)) < low(v)
    operand = half - 1 - low if ctx.party is P0 else low
    carry = yield from secure_compare(ctx, n - 1, p, operand, path + ("sc",), reduced)
    return (carry + top + (1 if ctx.party is P0 else 0)) % 2


def run_fnz(p: int, share0, share1, seed: int = 0) -> RunResult:
    s = Session(seed)
    deal_fnz(s.dealer, p, len(share0))
    return s.run(lambda ctx, v: fnz(ctx, p, v), tuple(share0), tuple(share1))


def run_sc(n: int, x: int, y: int, p: int | None = None, reduced=True, seed: int = 0) -> RunResult:
    p = p or sc_prime(n)
    s = Session(seed)
    deal_sc(s.dealer, n, p, reduced=reduced)
    return s.run(lambda ctx, v: secure_compare(ctx, n, p, v, reduced=reduced), x, y)


def run_drelu(n: int, u: int, v: int, p: int | None = None, reduced=True, seed: int = 0) -> RunResult:
    p = p or drelu_prime(n)
    s = Session(seed)
    deal_drelu(s.dealer, n, p, reduced=reduced)
    return s.run(lambda ctx, val: drelu(ctx, n, p, val, reduced=reduced), u, v)
