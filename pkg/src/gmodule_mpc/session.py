"""Wires a dealer, two party runtimes and the network together for one run."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Any, Callable

from .sharing import Dealer, FixedCorrelations, PrfCorrelations
from .transport import P0, P1, Meter, Network, PartyId


@dataclass
class PartyContext:
    party: PartyId
    correlations: Any

    def correlation(self, spec, path) -> tuple:
        return self.correlations.get(spec, path)


def derive_keys(seed: int) -> tuple[bytes, bytes]:
    base = str(seed).encode()
    return (
        hashlib.blake2b(base, person=b"gmpc-k0").digest()[:32],
        hashlib.blake2b(base, person=b"gmpc-k1").digest()[:32],
    )


@dataclass
class RunResult:
    p0: Any
    p1: Any
    meter: Meter
    views: dict | None = None

    @property
    def outputs(self):
        return self.p0, self.p1


class Session:
    """One protocol execution: deal everything, then run the online phase.

    P0's runtime only ever sees ``k0``; P1's sees ``k1`` and the corrections
    the dealer sent it.
    """

    def __init__(self, seed: int = 0):
        self.seed = seed
        k0, k1 = derive_keys(seed)
        self.meter = Meter()
        self.dealer = Dealer(k0, k1, self.meter)
        self._k0, self._k1 = k0, k1

    def contexts(self) -> tuple[PartyContext, PartyContext]:
        m = self.dealer.manifest
        return (
            PartyContext(P0, PrfCorrelations(P0, self._k0, m)),
            PartyContext(P1, PrfCorrelations(P1, self._k1, m, self.dealer.corrections())),
        )

    def run(self, engine: Callable[[PartyContext, Any], Any], in0, in1) -> RunResult:
        """Run ``engine(ctx, input)`` for both parties after dealing is finished."""
        c0, c1 = self.contexts()
        net = Network(self.meter)
        out = net.run({P0: engine(c0, in0), P1: engine(c1, in1)})
        return RunResult(out[P0], out[P1], self.meter, dict(net.received))


def run_with_records(engine, in0, in1, records) -> RunResult:
    """Run with explicit correlation records (no PRF); used for view enumeration."""
    meter = Meter()
    net = Network(meter)
    out = net.run({
        P0: engine(PartyContext(P0, FixedCorrelations(P0, records)), in0),
        P1: engine(PartyContext(P1, FixedCorrelations(P1, records)), in1),
    })
    return RunResult(out[P0], out[P1], meter, dict(net.received))
