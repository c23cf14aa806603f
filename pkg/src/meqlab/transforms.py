"""Equivalence-preserving rewrites.

Two facts drive everything here. First, reversing one transmission keeps a
protocol correct: the new sender transmits the symbol it *expected* to
receive (the one that would arrive if every input matched its own), later
steps of the old receiver pretend that expectation is what arrived, and the
old sender flags a mismatch whenever the expectation disagrees with what it
would have sent. Second, iterating such reversals and then fixing every
node's outgoing symbols to their expected values turns any protocol into an
acyclic per-link-table protocol without raising its cost.
"""

from .core import (
    GeneralProtocol,
    LinkTable,
    MalformedProtocolError,
    Protocol,
    TableProtocol,
    materialize,
    simulate,
)


def expected_symbol(p: Protocol, step_index: int, x: int) -> int:
    """Symbol sent at the given step when every node's input is x."""
    length = len(p.links) if isinstance(p, TableProtocol) else len(p.steps)
    if not 1 <= step_index <= length:
        raise ValueError(f"step index {step_index} outside 1..{length}")
    if not 1 <= x <= p.M:
        raise ValueError(f"input {x} outside 1..{p.M}")
    return simulate(p, (x,) * p.n).symbols[step_index - 1]


def _decide(p: GeneralProtocol, node: int, x: int, history: tuple[int, ...]) -> int:
    table = p.decisions.get(node)
    if table is None:
        return 0
    try:
        return table[(x, history)]
    except KeyError:
        raise MalformedProtocolError(f"node {node}: no decision for {(x, history)}") from None


def flip_step(p: GeneralProtocol, step_index: int) -> GeneralProtocol:
    """Reverse the direction of one step, preserving correctness.

    With the reversed step l sent by the old receiver R to the old sender T:
    R transmits its expected symbol for l; R's later transmissions evaluate
    their old tables as if that expectation had arrived at l; T's other steps
    and decision ignore the symbol now arriving at l, but T additionally
    decides 1 when that symbol differs from what it would itself have sent.
    All ranges are recomputed afterward.
    """
    if not 1 <= step_index <= len(p.steps):
        raise ValueError(f"step index {step_index} outside 1..{len(p.steps)}")
    l0 = step_index - 1
    flipped = p.steps[l0]
    t_node, r_node = flipped.sender, flipped.receiver
    expected = {x: expected_symbol(p, step_index, x) for x in range(1, p.M + 1)}

    schedule = [(st.sender, st.receiver) for st in p.steps]
    schedule[l0] = (r_node, t_node)

    def old_style_history(node, arrivals, before, x_r):
        # Reconstruct the history `node` would hold in the unflipped
        # protocol: R pretends its expectation arrived at l0, T drops the
        # symbol it now receives there. Arrivals are (step, symbol) pairs.
        entries = [(q, s) for q, s in arrivals if q < before]
        if node == r_node and l0 < before:
            entries.append((l0, expected[x_r]))
            entries.sort()
        elif node == t_node:
            entries = [(q, s) for q, s in entries if q != l0]
        return tuple(s for _, s in entries)

    def semantics(values):
        x_r = values[r_node - 1]
        arrivals = [[] for _ in range(p.n)]
        symbols = []
        for m, st in enumerate(p.steps):
            if m == l0:
                sender, receiver = r_node, t_node
                sym = expected[x_r]
            else:
                sender, receiver = st.sender, st.receiver
                hist = old_style_history(sender, arrivals[sender - 1], m, x_r)
                key = (values[sender - 1], hist)
                try:
                    sym = st.table[key]
                except KeyError:
                    raise MalformedProtocolError(
                        f"step {m + 1} ({sender}->{receiver}): no entry for {key}"
                    ) from None
            symbols.append(sym)
            arrivals[receiver - 1].append((m, sym))
        end = len(p.steps)
        decisions = []
        for node in range(1, p.n + 1):
            hist = old_style_history(node, arrivals[node - 1], end, x_r)
            bit = _decide(p, node, values[node - 1], hist)
            if node == t_node:
                before = old_style_history(t_node, arrivals[t_node - 1], l0, x_r)
                key = (values[t_node - 1], before)
                try:
                    would_send = flipped.table[key]
                except KeyError:
                    raise MalformedProtocolError(
                        f"step {step_index}: no entry for {key}"
                    ) from None
                if expected[x_r] != would_send:
                    bit = 1
            decisions.append(bit)
        return symbols, decisions

    return materialize(p.n, p.M, schedule, semantics)


def make_iid(p: GeneralProtocol) -> TableProtocol:
    """Normalize to expected-symbol-per-link form.

    Steps running against the node order are flipped so every link points
    from a lower to a higher node id, then each step's symbol is fixed to
    its expected value for the sender's own input, which removes all history
    dependence. Multiple steps on one link merge into a single table whose
    symbols stand for the tuple of their values. Receivers detect by
    comparing arrivals against their own expectations, which is exactly the
    TableProtocol semantics.
    """
    q = p
    for index in range(1, len(q.steps) + 1):
        st = q.steps[index - 1]
        if st.sender > st.receiver:
            q = flip_step(q, index)

    by_link: dict[tuple[int, int], list[int]] = {}
    for index, st in enumerate(q.steps, 1):
        by_link.setdefault((st.sender, st.receiver), []).append(index)

    links = []
    for (sender, receiver), step_indexes in sorted(by_link.items()):
        tuples = [
            tuple(expected_symbol(q, index, x) for index in step_indexes)
            for x in range(1, q.M + 1)
        ]
        order = {tup: rank for rank, tup in enumerate(sorted(set(tuples)), 1)}
        links.append(LinkTable(sender, receiver, tuple(order[tup] for tup in tuples)))
    return TableProtocol(q.n, q.M, tuple(links))
