"""Additive sharing, the keyed PRF, and the correlated-randomness dealer.

The dealer P2 shares key ``k0`` with P0 and ``k1`` with P1.  For invocation
``index`` both P2 and P0 expand ``F_k0(index)`` into P0's whole part; P2 and P1
expand ``F_k1(index)`` into all of P1's part except one element, which P2
computes so the correlation holds and sends to P1 offline.  That element is
the only offline traffic.
"""

from __future__ import annotations

import hashlib
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any

from .algebra import AbelianGroup, GModule, MapSpace, Zmod
from .errors import ConfigurationError, ProtocolStateError
from .transport import P0, P1, P2, PartyId

F2 = Zmod(2)


@dataclass(frozen=True)
class Share:
    group: AbelianGroup
    value: Any
    owner: PartyId


def split(x, group: AbelianGroup, rng) -> tuple[Share, Share]:
    group.check(x)
    r = group.random(rng)
    return Share(group, r, P0), Share(group, group.sub(x, r), P1)


def reconstruct(s0: Share, s1: Share):
    if s0.group != s1.group:
        raise ConfigurationError("shares live in different groups")
    return s0.group.add(s0.value, s1.value)


class PrfSource:
    """Keyed BLAKE2b in counter mode, consumed as a bit stream.

    ``randrange`` rejection-samples so every residue is exactly uniform given
    uniform PRF output.
    """

    def __init__(self, key: bytes, counter: int, label: bytes = b""):
        if counter < 0:
            raise ValueError("counter must be non-negative")
        self.key = key
        self.counter = counter
        self._prefix = label + b"|" + counter.to_bytes(16, "big")
        self._block = 0
        self._bits = 0
        self._nbits = 0

    def _refill(self):
        h = hashlib.blake2b(self._prefix + self._block.to_bytes(8, "big"), key=self.key)
        self._block += 1
        self._bits |= int.from_bytes(h.digest(), "big") << self._nbits
        self._nbits += 512

    def getrandbits(self, k: int) -> int:
        while self._nbits < k:
            self._refill()
        out = self._bits & ((1 << k) - 1)
        self._bits >>= k
        self._nbits -= k
        return out

    def randrange(self, stop: int) -> int:
        if stop <= 0:
            raise ValueError("empty range")
        k = (stop - 1).bit_length()
        while True:
            r = self.getrandbits(k)
            if r < stop:
                return r


# ---------------------------------------------------------------------------
# Correlations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorrelationRecord:
    tag: str
    p0: tuple
    p1: tuple
    correction: Any


class CorrelationSpec(ABC):
    tag: str

    @abstractmethod
    def sample_p0(self, rng) -> tuple:
        """P0's whole part, drawn from ``F_k0(index)``."""

    @abstractmethod
    def sample_p1(self, rng) -> tuple:
        """P1's PRF-derived components, drawn from ``F_k1(index)``."""

    @abstractmethod
    def correct(self, p0: tuple, p1_sampled: tuple):
        """The element P2 sends to P1."""

    @abstractmethod
    def finish_p1(self, p1_sampled: tuple, correction) -> tuple: ...

    @property
    @abstractmethod
    def correction_space(self) -> AbelianGroup: ...

    @abstractmethod
    def holds(self, record: CorrelationRecord) -> bool: ...

    def assemble(self, p0: tuple, p1_sampled: tuple) -> CorrelationRecord:
        c = self.correct(p0, p1_sampled)
        return CorrelationRecord(self.tag, tuple(p0), self.finish_p1(p1_sampled, c), c)


@dataclass(frozen=True)
class GmCorrelation(CorrelationSpec):
    """P0: (h, u0); P1: (b, u1) with u0 + u1 = h b."""

    action: GModule
    tag = "gm"

    def sample_p0(self, rng):
        return (self.action.group.random(rng), self.action.module.random(rng))

    def sample_p1(self, rng):
        return (self.action.group.random(rng), self.action.module.random(rng))

    def correct(self, p0, p1_sampled):
        h, u0 = p0
        _, b = p1_sampled
        return self.action.module.sub(self.action.act(h, b), u0)

    def finish_p1(self, p1_sampled, correction):
        return (p1_sampled[1], correction)

    @property
    def correction_space(self):
        return self.action.module

    def holds(self, record):
        (h, u0), (b, u1) = record.p0, record.p1
        A = self.action.module
        return A.add(u0, u1) == self.action.act(h, b)


@dataclass(frozen=True)
class SgmCorrelation(CorrelationSpec):
    """P0: (h0, b0, u0); P1: (h1, b1, u1) with u0 + u1 = h0 h1 (b0 + b1)."""

    action: GModule
    tag = "sgm"

    def __post_init__(self):
        if not self.action.group.is_abelian:
            raise ConfigurationError(f"shared action needs an abelian group, got {self.action.group}")

    def _sample(self, rng):
        G, A = self.action.group, self.action.module
        return (G.random(rng), A.random(rng), A.random(rng))

    sample_p0 = _sample
    sample_p1 = _sample

    def _target(self, h0, h1, b0, b1):
        G, A = self.action.group, self.action.module
        return self.action.act(G.mul(h0, h1), A.add(b0, b1))

    def correct(self, p0, p1_sampled):
        h0, b0, u0 = p0
        h1, b1, _ = p1_sampled
        return self.action.module.sub(self._target(h0, h1, b0, b1), u0)

    def finish_p1(self, p1_sampled, correction):
        return (p1_sampled[0], p1_sampled[1], correction)

    @property
    def correction_space(self):
        return self.action.module

    def holds(self, record):
        (h0, b0, u0), (h1, b1, u1) = record.p0, record.p1
        return self.action.module.add(u0, u1) == self._target(h0, h1, b0, b1)


@dataclass(frozen=True)
class GmrCorrelation(CorrelationSpec):
    """P0: (g, v0); P1: (u, v1) with v0 + v1 = g u."""

    action: GModule
    tag = "gmr"

    def sample_p0(self, rng):
        return (self.action.group.random(rng), self.action.module.random(rng))

    def sample_p1(self, rng):
        return (self.action.module.random(rng), self.action.module.random(rng))

    def correct(self, p0, p1_sampled):
        g, v0 = p0
        u, _ = p1_sampled
        return self.action.module.sub(self.action.act(g, u), v0)

    def finish_p1(self, p1_sampled, correction):
        return (p1_sampled[0], correction)

    @property
    def correction_space(self):
        return self.action.module

    def holds(self, record):
        (g, v0), (u, v1) = record.p0, record.p1
        return self.action.module.add(v0, v1) == self.action.act(g, u)


@dataclass(frozen=True)
class AotCorrelation(CorrelationSpec):
    """P0: (i~, a0); P1: (f, a1) with a0 + a1 = f(i~).

    With ``fixed_index`` set, ``i~`` is that value instead of a PRF draw; P0
    and the dealer both know it, so nothing about it is sent.
    """

    domain_size: int
    codomain: AbelianGroup
    fixed_index: int | None = None
    tag = "aot"

    @property
    def maps(self) -> MapSpace:
        return MapSpace(self.domain_size, self.codomain)

    def sample_p0(self, rng):
        if self.fixed_index is None:
            i = rng.randrange(self.domain_size)
        else:
            i = self.fixed_index % self.domain_size
        return (i, self.codomain.random(rng))

    def sample_p1(self, rng):
        return (self.maps.random(rng),)

    def correct(self, p0, p1_sampled):
        i, a0 = p0
        (f,) = p1_sampled
        return self.codomain.sub(f[i], a0)

    def finish_p1(self, p1_sampled, correction):
        return (p1_sampled[0], correction)

    @property
    def correction_space(self):
        return self.codomain

    def holds(self, record):
        (i, a0), (f, a1) = record.p0, record.p1
        return self.codomain.add(a0, a1) == f[i]


@dataclass(frozen=True)
class MotCorrelation(CorrelationSpec):
    """P0: (u0, b0); P1: (u1, b1) with b0 + b1 = I(u0 + u1 mod 2) in Z/m."""

    m: int
    tag = "mot"

    def __post_init__(self):
        if self.m < 2:
            raise ConfigurationError(f"module transform needs m >= 2, got {self.m}")

    def _sample(self, rng):
        return (rng.randrange(2), rng.randrange(self.m))

    sample_p0 = _sample
    sample_p1 = _sample

    def correct(self, p0, p1_sampled):
        u = (p0[0] + p1_sampled[0]) % 2
        return (u - p0[1]) % self.m

    def finish_p1(self, p1_sampled, correction):
        return (p1_sampled[0], correction)

    @property
    def correction_space(self):
        return Zmod(self.m)

    def holds(self, record):
        (u0, b0), (u1, b1) = record.p0, record.p1
        return (b0 + b1) % self.m == (u0 + u1) % 2


# ---------------------------------------------------------------------------
# Dealer and per-party views of the dealt material
# ---------------------------------------------------------------------------


def path_key(path) -> str:
    return "/".join(str(p) for p in path)


class Dealer:
    """P2.  Deals every correlation of a run before the online phase starts."""

    def __init__(self, k0: bytes, k1: bytes, meter=None):
        self._k0 = k0
        self._k1 = k1
        self.meter = meter
        self.records: list[CorrelationRecord] = []
        # path -> (index, tag); public protocol structure, carries no secrets
        self.manifest: dict[str, tuple[int, str]] = {}

    def deal(self, spec: CorrelationSpec, path) -> CorrelationRecord:
        key = path_key(path)
        if key in self.manifest:
            raise ProtocolStateError(f"correlation {key!r} dealt twice")
        index = len(self.records)
        p0 = spec.sample_p0(PrfSource(self._k0, index))
        p1 = spec.sample_p1(PrfSource(self._k1, index))
        record = spec.assemble(p0, p1)
        self.records.append(record)
        self.manifest[key] = (index, spec.tag)
        if self.meter is not None:
            self.meter.record_offline(P2, P1, key, record.correction, spec.correction_space)
        return record

    def corrections(self) -> dict[int, tuple[str, Any]]:
        """What P1 stores after the offline phase."""
        return {i: (r.tag, r.correction) for i, r in enumerate(self.records)}


class PrfCorrelations:
    """A party's access to its dealt material: its own key, plus P1's stored corrections."""

    def __init__(self, party: PartyId, key: bytes, manifest, corrections=None):
        if party is P1 and corrections is None:
            raise ValueError("P1 needs the dealer's corrections")
        self.party = party
        self._key = key
        self._manifest = manifest
        self._corrections = corrections

    def _lookup(self, spec, path):
        key = path_key(path)
        try:
            index, tag = self._manifest[key]
        except KeyError:
            raise ProtocolStateError(f"{self.party.name}: no correlation dealt for {key!r}") from None
        if tag != spec.tag:
            raise ProtocolStateError(f"{self.party.name}: {key!r} was dealt as {tag}, requested {spec.tag}")
        return index

    def get(self, spec: CorrelationSpec, path) -> tuple:
        index = self._lookup(spec, path)
        rng = PrfSource(self._key, index)
        if self.party is P0:
            return spec.sample_p0(rng)
        tag, correction = self._corrections[index]
        return spec.finish_p1(spec.sample_p1(rng), correction)


class FixedCorrelations:
    """Hands out explicitly constructed records; used to enumerate dealer randomness."""

    def __init__(self, party: PartyId, records: dict[str, CorrelationRecord]):
        self.party = party
        self._records = records

    def get(self, spec, path):
        key = path_key(path)
        try:
            record = self._records[key]
        except KeyError:
            raise ProtocolStateError(f"{self.party.name}: no correlation for {key!r}") from None
        if record.tag != spec.tag:
            raise ProtocolStateError(f"{key!r} is a {record.tag} record, requested {spec.tag}")
        return record.p0 if self.party is P0 else record.p1


_SPECS = {
    "gm": GmCorrelation,
    "sgm": SgmCorrelation,
    "gmr": GmrCorrelation,
    "aot": AotCorrelation,
    "mot": MotCorrelation,
}


def spec_for_tag(tag: str, *args, **kwargs) -> CorrelationSpec:
    """Build a correlation spec from its protocol tag."""
    try:
        cls = _SPECS[tag]
    except KeyError:
        raise ConfigurationError(f"unknown protocol tag {tag!r}; expected one of {sorted(_SPECS)}") from None
    return cls(*args, **kwargs)
