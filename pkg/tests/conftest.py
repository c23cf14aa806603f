import random

from meqlab import BipartiteRep, LinkTable, TableProtocol, conflict_pairs


def dense_random_table(rng: random.Random, M: int) -> tuple[int, ...]:
    """Random length-M table renumbered so its symbols are exactly 1..S."""
    raw = [rng.randint(1, M) for _ in range(M)]
    rank = {s: r for r, s in enumerate(sorted(set(raw)), 1)}
    return tuple(rank[s] for s in raw)


def random_correct_protocol(rng: random.Random, M: int) -> TableProtocol:
    """Random three-node protocol that provably solves the detection problem.

    Left and right tables are drawn until no two inputs collide on both, and
    the third table is a greedy strong edge coloring of the induced graph in
    a shuffled edge order. Validity of the coloring is what makes the
    protocol correct, so every draw is correct by construction.
    """
    while True:
        ab = dense_random_table(rng, M)
        ac = dense_random_table(rng, M)
        pairs = tuple(zip(ab, ac))
        if len(set(pairs)) == M:
            break
    graph = BipartiteRep(max(ab), max(ac), pairs)
    neighbours = {x: set() for x in range(1, M + 1)}
    for x, y in conflict_pairs(graph):
        neighbours[x].add(y)
        neighbours[y].add(x)
    order = list(range(1, M + 1))
    rng.shuffle(order)
    colors = {}
    for x in order:
        taken = {colors[y] for y in neighbours[x] if y in colors}
        colors[x] = min(c for c in range(1, M + 1) if c not in taken)
    bc = tuple(colors[x] for x in range(1, M + 1))
    return TableProtocol(3, M, (
        LinkTable(1, 2, ab),
        LinkTable(1, 3, ac),
        LinkTable(2, 3, bc),
    ))
