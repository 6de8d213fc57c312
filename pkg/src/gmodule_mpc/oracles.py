"""Plaintext reference functions every protocol is checked against."""

from __future__ import annotations

from .algebra import GModule


def less_than(x: int, y: int) -> int:
    return int(x < y)


def drelu(x: int, n: int) -> int:
    """1 when x, read as n-bit two's complement, is non-negative."""
    return int(x % (1 << n) < 1 << (n - 1))


def relu(x: int, n: int) -> int:
    x %= 1 << n
    return x if x < 1 << (n - 1) else 0


def first_nonzero(bits) -> int:
    for i, b in enumerate(bits):
        if b:
            return i
    raise ValueError("all-zero vector has no first nonzero entry")


def select_scale(a: int, z: int, N: int) -> int:
    return a * z % N


def select(a: int, x: int, y: int) -> int:
    return x if a else y


def index(g, i: int):
    return g[i]


def lift_bit(b: int, m: int) -> int:
    return b % 2 % m


def act(action: GModule, g, a):
    return action.act(g, a)


def shared_act(action: GModule, g0, a0, g1, a1):
    G, A = action.group, action.module
    return action.act(G.mul(g0, g1), A.add(a0, a1))


def recovered(action: GModule, b, g, a) -> bool:
    """``g a = b`` with ``a`` in the same orbit as ``b``."""
    return action.act(g, a) == b and action.orbit(a) == action.orbit(b)
