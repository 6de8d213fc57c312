"""Finite abelian groups, acting groups and the G-module actions used by the protocols.

Elements are plain Python values: integers in ``[0, order)`` for cyclic groups,
tuples of such integers for products and map spaces, ``+1/-1`` for the sign
group and ``(rotation, units)`` pairs for the rotate-and-scale group.  All
descriptors are frozen dataclasses, so they are hashable and safe to share.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Any, Hashable, Iterator, Protocol

from sympy import isprime, nextprime

from .errors import InvalidGroupElementError, MalformedInputError


class RandomSource(Protocol):
    def randrange(self, stop: int) -> int: ...


def is_prime(n: int) -> bool:
    return bool(isprime(n))


def least_prime_at_least(bound: int) -> int:
    """Smallest prime ``>= bound``."""
    return 2 if bound <= 2 else int(nextprime(bound - 1))


# ---------------------------------------------------------------------------
# Abelian groups (written additively)
# ---------------------------------------------------------------------------


class AbelianGroup(ABC):
    order: int

    @property
    def bit_size(self) -> float:
        return math.log2(self.order)

    @property
    def wire_bits(self) -> int:
        return (self.order - 1).bit_length()

    @property
    @abstractmethod
    def zero(self) -> Any: ...

    @abstractmethod
    def add(self, x, y): ...

    @abstractmethod
    def neg(self, x): ...

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    @abstractmethod
    def random(self, rng: RandomSource): ...

    @abstractmethod
    def elements(self) -> Iterator[Any]: ...

    @abstractmethod
    def contains(self, x) -> bool: ...

    def check(self, x):
        if not self.contains(x):
            raise MalformedInputError(f"{x!r} is not an element of {self}")
        return x


@dataclass(frozen=True)
class Zmod(AbelianGroup):
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise MalformedInputError(f"modulus must be positive, got {self.N}")

    @property
    def order(self) -> int:
        return self.N

    @property
    def zero(self) -> int:
        return 0

    def add(self, x, y):
        return (x + y) % self.N

    def neg(self, x):
        return -x % self.N

    def sub(self, x, y):
        return (x - y) % self.N

    def random(self, rng):
        return rng.randrange(self.N)

    def elements(self):
        return iter(range(self.N))

    def contains(self, x):
        return isinstance(x, int) and 0 <= x < self.N

    def __str__(self):
        return f"Z/{self.N}"


@dataclass(frozen=True)
class PrimeField(Zmod):
    def __post_init__(self):
        if not is_prime(self.N):
            raise MalformedInputError(f"{self.N} is not prime")

    @property
    def p(self) -> int:
        return self.N

    def mul(self, x, y):
        return x * y % self.N

    def inv(self, x):
        if x % self.N == 0:
            raise InvalidGroupElementError("zero has no inverse")
        return pow(x, -1, self.N)

    def __str__(self):
        return f"F_{self.N}"


class _Coordinatewise(AbelianGroup):
    """Shared arithmetic for fixed-length tuples over a base group."""

    @property
    @abstractmethod
    def _base(self) -> AbelianGroup: ...

    @property
    @abstractmethod
    def _length(self) -> int: ...

    @property
    def order(self) -> int:
        return self._base.order ** self._length

    @property
    def zero(self):
        return (self._base.zero,) * self._length

    def _same_length(self, *xs):
        for x in xs:
            if len(x) != self._length:
                raise MalformedInputError(f"expected {self._length} coordinates, got {len(x)}")

    def add(self, x, y):
        self._same_length(x, y)
        b = self._base
        return tuple(b.add(s, t) for s, t in zip(x, y))

    def neg(self, x):
        b = self._base
        return tuple(b.neg(s) for s in x)

    def sub(self, x, y):
        self._same_length(x, y)
        b = self._base
        return tuple(b.sub(s, t) for s, t in zip(x, y))

    def random(self, rng):
        b = self._base
        return tuple(b.random(rng) for _ in range(self._length))

    def elements(self):
        return product(list(self._base.elements()), repeat=self._length)

    def contains(self, x):
        return (
            isinstance(x, tuple)
            and len(x) == self._length
            and all(self._base.contains(s) for s in x)
        )


@dataclass(frozen=True)
class ProductPow(_Coordinatewise):
    base: AbelianGroup
    n: int

    @property
    def _base(self):
        return self.base

    @property
    def _length(self):
        return self.n

    def __str__(self):
        return f"({self.base})^{self.n}"


@dataclass(frozen=True)
class MapSpace(_Coordinatewise):
    """Map(Z/domain_size, codomain), each map stored as its value table."""

    domain_size: int
    codomain: AbelianGroup

    @property
    def _base(self):
        return self.codomain

    @property
    def _length(self):
        return self.domain_size

    def evaluate(self, f, i: int):
        if not 0 <= i < self.domain_size:
            raise MalformedInputError(f"index {i} outside domain of size {self.domain_size}")
        return f[i]

    def shift(self, f, k: int):
        """Left shift: ``shift(f, k)(i) == f(i + k)``."""
        self._same_length(f)
        return circular_left_shift(f, k)

    def __str__(self):
        return f"Map(Z/{self.domain_size}, {self.codomain})"


# ---------------------------------------------------------------------------
# Vector operators on F_p^n
# ---------------------------------------------------------------------------


def circular_left_shift(x: tuple, i: int) -> tuple:
    """Coordinate k of the result is ``x[(k + i) mod n]``."""
    n = len(x)
    if n == 0:
        raise MalformedInputError("cannot shift an empty vector")
    i %= n
    return tuple(x[i:]) + tuple(x[:i])


def coordinatewise_scale(x: tuple, a: tuple, p: int) -> tuple:
    if len(x) != len(a):
        raise MalformedInputError(f"dimension mismatch: {len(x)} vs {len(a)}")
    if any(s % p == 0 for s in a):
        raise InvalidGroupElementError(f"scaling vector {a} has a zero coordinate mod {p}")
    return tuple(s * t % p for s, t in zip(a, x))


def orbit_weight(x) -> int:
    """Hamming weight, which labels the rotate-and-scale orbit of ``x``."""
    return sum(1 for s in x if s != 0)


# ---------------------------------------------------------------------------
# Acting groups (written multiplicatively)
# ---------------------------------------------------------------------------


class Group(ABC):
    order: int

    @property
    def bit_size(self) -> float:
        return math.log2(self.order)

    @property
    def wire_bits(self) -> int:
        return (self.order - 1).bit_length()

    @property
    @abstractmethod
    def identity(self): ...

    @property
    @abstractmethod
    def is_abelian(self) -> bool: ...

    @abstractmethod
    def mul(self, g, h): ...

    @abstractmethod
    def inv(self, g): ...

    @abstractmethod
    def random(self, rng: RandomSource): ...

    @abstractmethod
    def elements(self) -> Iterator[Any]: ...

    @abstractmethod
    def contains(self, g) -> bool: ...


@dataclass(frozen=True)
class Signs(Group):
    """The group {+1, -1}."""

    @property
    def order(self):
        return 2

    @property
    def identity(self):
        return 1

    @property
    def is_abelian(self):
        return True

    def mul(self, g, h):
        return g * h

    def inv(self, g):
        return g

    def random(self, rng):
        return (1, -1)[rng.randrange(2)]

    def elements(self):
        return iter((1, -1))

    def contains(self, g):
        return g in (1, -1)

    def __str__(self):
        return "{+-1}"


@dataclass(frozen=True)
class UnitsMod(Group):
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise MalformedInputError(f"{self.p} is not prime")

    @property
    def order(self):
        return self.p - 1

    @property
    def identity(self):
        return 1

    @property
    def is_abelian(self):
        return True

    def mul(self, g, h):
        return g * h % self.p

    def inv(self, g):
        if g % self.p == 0:
            raise InvalidGroupElementError("0 is not a unit")
        return pow(g, -1, self.p)

    def random(self, rng):
        return 1 + rng.randrange(self.p - 1)

    def elements(self):
        return iter(range(1, self.p))

    def contains(self, g):
        return isinstance(g, int) and 1 <= g < self.p

    def __str__(self):
        return f"(Z/{self.p})^x"


@dataclass(frozen=True)
class Semidirect(Group):
    """Z/n ⋉ (F_p^x)^n with ``(i, a)(j, b) = (i + j, a * L_i(b))``.

    Acts on F_p^n by rotate-then-scale: ``(i, a) x = T_a(L_i(x))``.
    """

    n: int
    p: int

    def __post_init__(self):
        if self.n < 1:
            raise MalformedInputError("rotation length must be positive")
        if not is_prime(self.p):
            raise MalformedInputError(f"{self.p} is not prime")

    @property
    def order(self):
        return self.n * (self.p - 1) ** self.n

    @cached_property
    def identity(self):
        return (0, (1,) * self.n)

    @property
    def is_abelian(self):
        return self.n == 1 or self.p == 2

    def _validate(self, g):
        if not self.contains(g):
            if isinstance(g, tuple) and len(g) == 2 and isinstance(g[1], tuple) and len(g[1]) == self.n:
                raise InvalidGroupElementError(f"{g!r} has a non-unit coordinate")
            raise MalformedInputError(f"{g!r} is not an element of {self}")

    def mul(self, g, h):
        self._validate(g)
        self._validate(h)
        (i, a), (j, b) = g, h
        return ((i + j) % self.n, coordinatewise_scale(circular_left_shift(b, i), a, self.p))

    def inv(self, g):
        self._validate(g)
        i, a = g
        a_inv = tuple(pow(s, -1, self.p) for s in a)
        return ((-i) % self.n, circular_left_shift(a_inv, -i))

    def random(self, rng):
        i = rng.randrange(self.n)
        return (i, tuple(1 + rng.randrange(self.p - 1) for _ in range(self.n)))

    def elements(self):
        units = range(1, self.p)
        for i in range(self.n):
            for a in product(units, repeat=self.n):
                yield (i, a)

    def contains(self, g):
        return (
            isinstance(g, tuple)
            and len(g) == 2
            and isinstance(g[0], int)
            and 0 <= g[0] < self.n
            and isinstance(g[1], tuple)
            and len(g[1]) == self.n
            and all(isinstance(s, int) and 1 <= s < self.p for s in g[1])
        )

    def __str__(self):
        return f"Z/{self.n} x| (F_{self.p}^x)^{self.n}"


def semidirect_compose(g1, g2, n: int, p: int):
    return Semidirect(n, p).mul(g1, g2)


def semidirect_inverse(g, n: int, p: int):
    return Semidirect(n, p).inv(g)


# ---------------------------------------------------------------------------
# G-modules
# ---------------------------------------------------------------------------


class GModule(ABC):
    group: Group
    module: AbelianGroup

    @abstractmethod
    def act(self, g, m): ...

    @abstractmethod
    def orbit(self, m) -> Hashable:
        """Public label of the orbit containing ``m``."""


@dataclass(frozen=True)
class SignModule(GModule):
    """{+-1} acting on Z/N by negation."""

    N: int

    @cached_property
    def group(self):
        return Signs()

    @cached_property
    def module(self):
        return Zmod(self.N)

    def act(self, g, m):
        return m if g == 1 else -m % self.N

    def orbit(self, m):
        return min(m, -m % self.N)


@dataclass(frozen=True)
class UnitsModule(GModule):
    """(Z/p)^x acting on Z/p by multiplication."""

    p: int

    @cached_property
    def group(self):
        return UnitsMod(self.p)

    @cached_property
    def module(self):
        return PrimeField(self.p)

    def act(self, g, m):
        return g * m % self.p

    def orbit(self, m):
        return 0 if m == 0 else 1


@dataclass(frozen=True)
class RotateScaleModule(GModule):
    """Z/n ⋉ (F_p^x)^n acting on F_p^n; orbits are Hamming-weight classes."""

    n: int
    p: int

    @cached_property
    def group(self):
        return Semidirect(self.n, self.p)

    @cached_property
    def module(self):
        return ProductPow(PrimeField(self.p), self.n)

    def act(self, g, m):
        i, a = g
        if len(m) != self.n:
            raise MalformedInputError(f"expected {self.n} coordinates, got {len(m)}")
        return coordinatewise_scale(circular_left_shift(m, i), a, self.p)

    def orbit(self, m):
        return orbit_weight(m)
