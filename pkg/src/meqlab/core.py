"""Data model and execution engine for fixed-schedule message-passing protocols.

A protocol runs on n nodes, each holding a private value in 1..M. It is a
finite, fixed schedule of point-to-point transmissions; every transmitted
symbol is a small positive integer read from a lookup table, and every node
ends with a one-bit decision (0 = "inputs may all be equal", 1 = "mismatch
seen"). All types are immutable after construction and all operations are
pure, so everything here is safe to share across threads.
"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple


class MalformedProtocolError(Exception):
    """A lookup table has no entry for a reachable (input, history) pair."""


@dataclass(frozen=True)
class InputVector:
    """One assignment of private values to the n nodes, each in 1..M."""

    values: tuple[int, ...]
    M: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) < 2:
            raise ValueError("need at least two nodes")
        if self.M < 1:
            raise ValueError("alphabet size must be positive")
        for x in self.values:
            if not 1 <= x <= self.M:
                raise ValueError(f"input {x} outside 1..{self.M}")

    @property
    def n(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


def eq_oracle(v) -> int:
    """0 if every node holds the same value, 1 otherwise."""
    values = tuple(v)
    first = values[0]
    return 0 if all(x == first for x in values) else 1


@dataclass(frozen=True)
class Step:
    """One scheduled transmission.

    `sender` transmits ``table[(x, history)]`` to `receiver`, where x is the
    sender's own input and `history` is the tuple of symbols the sender has
    received on earlier steps, in schedule order. `range_size` is the number
    of symbols the step is allowed to use. Constructors in this package emit
    tight ranges (every value in 1..range_size realized by some reachable
    entry); a larger declared range is only used where a fixed transmission
    width is part of the construction itself.
    """

    sender: int
    receiver: int
    table: dict
    range_size: int

    def __post_init__(self):
        if self.sender == self.receiver:
            raise ValueError("sender and receiver must differ")
        if self.range_size < 1:
            raise ValueError("range_size must be positive")
        for key, sym in self.table.items():
            if not (isinstance(key, tuple) and len(key) == 2 and isinstance(key[1], tuple)):
                raise ValueError(f"table key {key!r} is not (input, history)")
            if not 1 <= sym <= self.range_size:
                raise ValueError(f"symbol {sym} outside 1..{self.range_size}")


@dataclass(frozen=True)
class GeneralProtocol:
    """Ordered schedule of steps plus per-node decision tables.

    `decisions` maps a node id to ``{(x, full received history): bit}``.
    A node absent from `decisions` always decides 0, which is the correct
    behaviour for nodes that never receive anything.
    """

    n: int
    M: int
    steps: tuple[Step, ...]
    decisions: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.n < 2:
            raise ValueError("need at least two nodes")
        if self.M < 1:
            raise ValueError("alphabet size must be positive")
        for st in self.steps:
            for node in (st.sender, st.receiver):
                if not 1 <= node <= self.n:
                    raise ValueError(f"node {node} outside 1..{self.n}")
        for node, table in self.decisions.items():
            if not 1 <= node <= self.n:
                raise ValueError(f"decision node {node} outside 1..{self.n}")
            for key, bit in table.items():
                if bit not in (0, 1):
                    raise ValueError(f"decision {bit!r} for node {node} is not a bit")

    @property
    def length(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class LinkTable:
    """Symbol table of one directed link: on input x the sender transmits
    ``symbols[x-1]``. Symbols must form a dense prefix 1..max; `range_size`
    defaults to that maximum (tight) and may only be declared larger."""

    sender: int
    receiver: int
    symbols: tuple[int, ...]
    range_size: int = 0

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if self.sender == self.receiver:
            raise ValueError("sender and receiver must differ")
        if not self.symbols:
            raise ValueError("empty symbol table")
        top = max(self.symbols)
        if set(self.symbols) != set(range(1, top + 1)):
            raise ValueError(f"symbols {sorted(set(self.symbols))} are not a dense 1..{top} range")
        if self.range_size == 0:
            object.__setattr__(self, "range_size", top)
        elif self.range_size < top:
            raise ValueError(f"declared range {self.range_size} below realized {top}")


@dataclass(frozen=True)
class TableProtocol:
    """Protocol whose every symbol depends only on the sender's own input.

    One table per directed link; links are oriented from the lower to the
    higher node id and scheduled in (sender, receiver) order, so node 1
    transmits first and node n only listens. A receiver decides 1 iff some
    received symbol differs from the one its own input produces; nodes with
    no incoming link decide 0.
    """

    n: int
    M: int
    links: tuple[LinkTable, ...]

    def __post_init__(self):
        object.__setattr__(self, "links", tuple(self.links))
        if self.n < 2:
            raise ValueError("need at least two nodes")
        if self.M < 1:
            raise ValueError("alphabet size must be positive")
        prev = None
        for lk in self.links:
            if not (1 <= lk.sender <= self.n and 1 <= lk.receiver <= self.n):
                raise ValueError("link endpoint outside node range")
            if lk.sender >= lk.receiver:
                raise ValueError(f"link ({lk.sender},{lk.receiver}) not oriented low->high")
            if len(lk.symbols) != self.M:
                raise ValueError(f"link table has {len(lk.symbols)} entries, expected {self.M}")
            key = (lk.sender, lk.receiver)
            if prev is not None and key <= prev:
                raise ValueError("links must be strictly sorted by (sender, receiver)")
            prev = key

    def link(self, sender: int, receiver: int) -> LinkTable:
        for lk in self.links:
            if (lk.sender, lk.receiver) == (sender, receiver):
                return lk
        raise KeyError((sender, receiver))


Protocol = GeneralProtocol | TableProtocol


@dataclass(frozen=True)
class Transcript:
    """Everything one execution produced.

    `symbols` lists the symbol of each step in schedule order. `received`
    and `sent` give, per node (index i holds node i+1), the symbols it saw
    arrive or dispatched, again in schedule order; `decisions` holds each
    node's final bit.
    """

    symbols: tuple[int, ...]
    received: tuple[tuple[int, ...], ...]
    sent: tuple[tuple[int, ...], ...]
    decisions: tuple[int, ...]


def _check_vector(p: Protocol, v) -> tuple[int, ...]:
    if isinstance(v, InputVector) and v.M != p.M:
        raise ValueError(f"input alphabet {v.M} does not match protocol alphabet {p.M}")
    values = tuple(v)
    if len(values) != p.n:
        raise ValueError(f"{len(values)} inputs for {p.n} nodes")
    for x in values:
        if not 1 <= x <= p.M:
            raise ValueError(f"input {x} outside 1..{p.M}")
    return values


def _run_general(p: GeneralProtocol, values) -> tuple[list, list, list, list]:
    received = [[] for _ in range(p.n)]
    sent = [[] for _ in range(p.n)]
    symbols = []
    for index, st in enumerate(p.steps, 1):
        key = (values[st.sender - 1], tuple(received[st.sender - 1]))
        try:
            sym = st.table[key]
        except KeyError:
            raise MalformedProtocolError(
                f"step {index} ({st.sender}->{st.receiver}): no entry for {key}"
            ) from None
        symbols.append(sym)
        sent[st.sender - 1].append(sym)
        received[st.receiver - 1].append(sym)
    decisions = []
    for node in range(1, p.n + 1):
        table = p.decisions.get(node)
        if table is None:
            decisions.append(0)
            continue
        key = (values[node - 1], tuple(received[node - 1]))
        try:
            decisions.append(table[key])
        except KeyError:
            raise MalformedProtocolError(f"node {node}: no decision for {key}") from None
    return symbols, received, sent, decisions


def _run_table(t: TableProtocol, values) -> tuple[list, list, list, list]:
    received = [[] for _ in range(t.n)]
    sent = [[] for _ in range(t.n)]
    symbols = []
    decisions = [0] * t.n
    for lk in t.links:
        sym = lk.symbols[values[lk.sender - 1] - 1]
        if sym != lk.symbols[values[lk.receiver - 1] - 1]:
            decisions[lk.receiver - 1] = 1
        symbols.append(sym)
        sent[lk.sender - 1].append(sym)
        received[lk.receiver - 1].append(sym)
    return symbols, received, sent, decisions


def decisions_on(p: Protocol, values) -> list[int]:
    """Per-node decision bits for one raw input tuple (no transcript built)."""
    if isinstance(p, TableProtocol):
        out = [0] * p.n
        for lk in p.links:
            if lk.symbols[values[lk.sender - 1] - 1] != lk.symbols[values[lk.receiver - 1] - 1]:
                out[lk.receiver - 1] = 1
        return out
    return _run_general(p, values)[3]


def simulate(p: Protocol, v) -> Transcript:
    """Replay the schedule on one input vector.

    Deterministic: the transcript is a pure function of (p, v). Raises
    MalformedProtocolError if a reachable table entry is missing.
    """
    values = _check_vector(p, v)
    runner = _run_table if isinstance(p, TableProtocol) else _run_general
    symbols, received, sent, decisions = runner(p, values)
    return Transcript(
        symbols=tuple(symbols),
        received=tuple(tuple(r) for r in received),
        sent=tuple(tuple(s) for s in sent),
        decisions=tuple(decisions),
    )


class Complexity(NamedTuple):
    """Exact product of per-step symbol ranges and its base-2 logarithm.

    Protocols are compared through `product`; `bits` is derived and only for
    display or bound arithmetic.
    """

    product: int
    bits: float


def complexity(p: Protocol) -> Complexity:
    """Channel usage of a protocol: product of range sizes over all steps."""
    product = 1
    ranges = [lk.range_size for lk in p.links] if isinstance(p, TableProtocol) \
        else [st.range_size for st in p.steps]
    for r in ranges:
        product *= r
    return Complexity(product, math.log2(product))


def input_space(n: int, M: int) -> Iterable[tuple[int, ...]]:
    """All M**n input tuples in lexicographic order."""
    return itertools.product(range(1, M + 1), repeat=n)


def materialize(
    n: int,
    M: int,
    schedule: list[tuple[int, int]],
    semantics: Callable[[tuple[int, ...]], tuple[list[int], list[int]]],
    range_overrides: dict[int, int] | None = None,
) -> GeneralProtocol:
    """Rebuild dense lookup tables for a protocol given only its behaviour.

    `semantics(values)` must return (symbols, decisions): the symbol sent at
    each step of `schedule` and every node's final bit, for one input tuple.
    Every input vector is replayed twice: first to collect the symbols each
    step actually realizes, then to key tables by exactly the reachable
    (input, history) pairs. Realized symbols are renumbered to 1..S in
    ascending order, so already-dense ranges come out unchanged.

    `range_overrides` maps 1-based step indexes to a declared range_size
    (used for fixed-width framing); it must cover the realized count.
    """
    realized = [set() for _ in schedule]
    for values in input_space(n, M):
        symbols, _ = semantics(values)
        for l, sym in enumerate(symbols):
            realized[l].add(sym)
    remaps = [{old: new for new, old in enumerate(sorted(seen), 1)} for seen in realized]

    tables = [dict() for _ in schedule]
    decision_tables = {node: {} for node in range(1, n + 1)}
    for values in input_space(n, M):
        symbols, decisions = semantics(values)
        received = [[] for _ in range(n)]
        for l, (sender, receiver) in enumerate(schedule):
            sym = remaps[l][symbols[l]]
            key = (values[sender - 1], tuple(received[sender - 1]))
            old = tables[l].setdefault(key, sym)
            if old != sym:
                raise MalformedProtocolError(
                    f"step {l + 1} is not a function of (input, history) at {key}"
                )
            received[receiver - 1].append(sym)
        for node in range(1, n + 1):
            key = (values[node - 1], tuple(received[node - 1]))
            bit = decisions[node - 1]
            old = decision_tables[node].setdefault(key, bit)
            if old != bit:
                raise MalformedProtocolError(
                    f"node {node}'s decision is not a function of (input, history) at {key}"
                )

    steps = []
    for l, (sender, receiver) in enumerate(schedule):
        size = len(realized[l])
        if range_overrides and (l + 1) in range_overrides:
            declared = range_overrides[l + 1]
            if declared < size:
                raise ValueError(f"declared range {declared} below realized {size} at step {l + 1}")
            size = declared
        steps.append(Step(sender, receiver, tables[l], size))
    return GeneralProtocol(n, M, tuple(steps), decision_tables)


def table_to_general(t: TableProtocol) -> GeneralProtocol:
    """Expand per-link tables into an explicit stepwise protocol.

    One step per link in schedule order; receivers decide 1 iff any received
    symbol differs from the one expected for their own input, and nodes with
    no incoming link decide 0.
    """
    schedule = [(lk.sender, lk.receiver) for lk in t.links]
    overrides = {
        index: lk.range_size
        for index, lk in enumerate(t.links, 1)
        if lk.range_size > max(lk.symbols)
    }

    def semantics(values):
        symbols, _, _, decisions = _run_table(t, values)
        return symbols, decisions

    return materialize(t.n, t.M, schedule, semantics, overrides)


def tighten(p: GeneralProtocol) -> GeneralProtocol:
    """Recompute every range from the symbols actually realized over all inputs."""
    schedule = [(st.sender, st.receiver) for st in p.steps]

    def semantics(values):
        symbols, _, _, decisions = _run_general(p, values)
        return symbols, decisions

    return materialize(p.n, p.M, schedule, semantics)


def realized_ranges(p: Protocol) -> tuple[int, ...]:
    """Number of distinct symbols each step realizes over all input vectors."""
    if isinstance(p, TableProtocol):
        return tuple(len(set(lk.symbols)) for lk in p.links)
    seen = [set() for _ in p.steps]
    for values in input_space(p.n, p.M):
        symbols, _, _, _ = _run_general(p, values)
        for l, sym in enumerate(symbols):
            seen[l].add(sym)
    return tuple(len(s) for s in seen)
