"""Simulated three-party network with bit and round metering.

Party engines are generators.  They ``yield`` :class:`Send`, :class:`Recv`
and :class:`Sync` operations and receive payloads back from ``Recv``; the
:class:`Network` scheduler drives them cooperatively.

Round accounting: a message gets round ``clock + 1`` where ``clock`` is the
highest round the sender has received (or synced to).  Messages sent before
anything is received therefore share round 1, so a simultaneous exchange is
one round.  ``Sync`` marks the boundary between sequentially composed
sub-protocols: both parties' clocks advance to the last round used so far.
"""

from __future__ import annotations

import enum
import json
import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Any, Generator, Iterable, Mapping

from .errors import CommodityModelViolation, ProtocolLogicError


class PartyId(enum.IntEnum):
    P0 = 0
    P1 = 1
    P2 = 2


P0, P1, P2 = PartyId.P0, PartyId.P1, PartyId.P2

OFFLINE = "offline"
ONLINE = "online"


def _label(path, name: str) -> str:
    return "/".join(str(p) for p in path) + ("." + name if name else "")


@dataclass(frozen=True)
class Send:
    to: PartyId
    path: tuple
    name: str
    value: Any
    space: Any  # anything with .order

    @property
    def label(self):
        return _label(self.path, self.name)


@dataclass(frozen=True)
class Recv:
    frm: PartyId
    path: tuple
    name: str

    @property
    def label(self):
        return _label(self.path, self.name)


@dataclass(frozen=True)
class Sync:
    """Stage barrier between sequentially composed sub-protocols."""


@dataclass(frozen=True)
class Envelope:
    seq: int
    sender: PartyId
    receiver: PartyId
    phase: str
    round: int
    label: str
    payload: Any
    info_bits: float
    wire_bits: int
    deps: frozenset = frozenset()

    @property
    def protocol(self) -> str:
        """Innermost protocol segment of the label, e.g. ``sc/fnz/gmr.c1`` -> ``gmr``."""
        head = self.label.rsplit(".", 1)[0]
        return head.rsplit("/", 1)[-1].split("#", 1)[0]

    def as_record(self) -> dict:
        return {
            "seq": self.seq,
            "from": self.sender.name,
            "to": self.receiver.name,
            "phase": self.phase,
            "round": self.round,
            "label": self.label,
            "info_bits": self.info_bits,
            "wire_bits": self.wire_bits,
        }


def _bits(space) -> tuple[float, int]:
    order = space.order
    return math.log2(order), (order - 1).bit_length()


@dataclass
class Meter:
    envelopes: list[Envelope] = field(default_factory=list)

    def _check(self, sender, receiver, phase):
        if phase == ONLINE and (sender is P2 or receiver is P2):
            raise CommodityModelViolation(
                f"online message {sender.name}->{receiver.name}: the dealer takes no part online"
            )
        if phase == OFFLINE and sender is not P2:
            raise ProtocolLogicError("only the dealer sends in the offline phase")

    def _append(self, sender, receiver, phase, rnd, label, value, space, deps=frozenset()):
        self._check(sender, receiver, phase)
        info, wire = _bits(space)
        env = Envelope(len(self.envelopes), sender, receiver, phase, rnd, label, value, info, wire, deps)
        self.envelopes.append(env)
        return env

    def record_offline(self, sender, receiver, label, value, space):
        # all dealer traffic goes out in one batch
        return self._append(sender, receiver, OFFLINE, 1, label, value, space)

    def record_online(self, sender, receiver, rnd, label, value, space, deps):
        return self._append(sender, receiver, ONLINE, rnd, label, value, space, deps)

    def _of(self, phase):
        return [e for e in self.envelopes if e.phase == phase]

    @property
    def online(self) -> list[Envelope]:
        return self._of(ONLINE)

    @property
    def offline(self) -> list[Envelope]:
        return self._of(OFFLINE)

    @property
    def offline_bits(self) -> float:
        return math.fsum(e.info_bits for e in self.offline)

    @property
    def online_bits(self) -> float:
        return math.fsum(e.info_bits for e in self.online)

    @property
    def total_bits(self) -> float:
        return self.offline_bits + self.online_bits

    @property
    def offline_wire_bits(self) -> int:
        return sum(e.wire_bits for e in self.offline)

    @property
    def online_wire_bits(self) -> int:
        return sum(e.wire_bits for e in self.online)

    @property
    def online_rounds(self) -> int:
        return max((e.round for e in self.online), default=0)

    def breakdown(self) -> dict[str, dict[str, float]]:
        out: dict[str, dict[str, float]] = defaultdict(lambda: {"offline": 0.0, "online": 0.0})
        for e in self.envelopes:
            out[e.protocol][e.phase] += e.info_bits
        return dict(sorted(out.items()))

    def summary(self) -> dict:
        return {
            "offline_bits": self.offline_bits,
            "online_bits": self.online_bits,
            "total_bits": self.total_bits,
            "online_rounds": self.online_rounds,
            "offline_wire_bits": self.offline_wire_bits,
            "online_wire_bits": self.online_wire_bits,
        }

    def dump_jsonl(self, fh) -> None:
        for e in self.envelopes:
            fh.write(json.dumps(e.as_record(), sort_keys=True) + "\n")


def round_of(schedule: Iterable) -> int:
    """Longest dependency chain among online messages.

    ``schedule`` holds items with ``seq`` and ``deps`` (seqs the message waits
    on); offline envelopes are ignored.
    """
    items = {e.seq: e for e in schedule if getattr(e, "phase", ONLINE) == ONLINE}
    graph = {seq: {d for d in e.deps if d in items} for seq, e in items.items()}
    try:
        order = list(TopologicalSorter(graph).static_order())
    except CycleError as exc:
        raise ProtocolLogicError(f"cyclic message dependencies: {exc.args[1]}") from None
    depth: dict[int, int] = {}
    for seq in order:
        depth[seq] = 1 + max((depth[d] for d in graph[seq]), default=0)
    return max(depth.values(), default=0)


@dataclass
class _PartyState:
    gen: Generator
    clock: int = 0
    known: set = field(default_factory=set)
    waiting: Any = None
    inbox_value: Any = None
    done: bool = False
    result: Any = None
    started: bool = False


class Network:
    """Cooperative scheduler for one online phase."""

    def __init__(self, meter: Meter | None = None):
        self.meter = meter if meter is not None else Meter()
        self._queues: dict[tuple, deque] = defaultdict(deque)
        self.received: dict[PartyId, list[Envelope]] = defaultdict(list)

    def _advance(self, pid: PartyId, st: _PartyState) -> bool:
        progressed = False
        value = st.inbox_value
        st.inbox_value = None
        while True:
            if isinstance(st.waiting, Recv):
                op = st.waiting
                q = self._queues[(op.frm, pid, op.label)]
                if not q:
                    return progressed
                env = q.popleft()
                st.clock = max(st.clock, env.round)
                st.known.add(env.seq)
                self.received[pid].append(env)
                value = env.payload
                st.waiting = None
            elif isinstance(st.waiting, Sync):
                return progressed
            try:
                op = st.gen.send(value) if st.started else next(st.gen)
            except StopIteration as stop:
                st.done, st.result = True, stop.value
                return True
            st.started = True
            progressed = True
            value = None
            if isinstance(op, Send):
                env = self.meter.record_online(
                    pid, op.to, st.clock + 1, op.label, op.value, op.space, frozenset(st.known)
                )
                self._queues[(pid, op.to, op.label)].append(env)
            elif isinstance(op, (Recv, Sync)):
                st.waiting = op
            else:
                raise ProtocolLogicError(f"{pid.name} yielded unknown operation {op!r}")

    def _sync(self, states):
        clock = max([st.clock for st in states.values()] + [e.round for e in self.meter.online])
        sent = {e.seq for e in self.meter.online}
        for st in states.values():
            st.clock = clock
            st.known |= sent
            st.waiting = None

    def run(self, engines: Mapping[PartyId, Generator]) -> dict[PartyId, Any]:
        states = {pid: _PartyState(gen) for pid, gen in sorted(engines.items())}
        while True:
            progressed = False
            for pid, st in states.items():
                if not st.done:
                    progressed |= self._advance(pid, st)
            live = {pid: st for pid, st in states.items() if not st.done}
            if not live:
                return {pid: st.result for pid, st in states.items()}
            if len(live) == len(states) and all(isinstance(st.waiting, Sync) for st in live.values()):
                self._sync(states)
                progressed = True
            if not progressed:
                blocked = ", ".join(
                    f"{pid.name} awaiting {self._describe(st.waiting)} at round {st.clock + 1}"
                    for pid, st in live.items()
                )
                raise ProtocolLogicError(f"deadlock: {blocked}")

    @staticmethod
    def _describe(op):
        if isinstance(op, Recv):
            return f"{op.label!r} from {op.frm.name}"
        return "stage barrier"
