"""Bipartite view of three-node per-link protocols and the exact optimum.

A protocol over links 1->2, 1->3, 2->3 is drawn as a bipartite graph: left
vertices are the distinct symbols of link 1->2, right vertices those of
1->3, and each input value x becomes the edge joining its two symbols.
Correctness forces the edges to be distinct (else two values are
indistinguishable to both receivers) and forces the 2->3 table to separate
any two edges within distance two of each other, i.e. to be a strong edge
coloring. Searching all small graphs and color counts therefore computes
the exact optimal cost for three nodes.
"""

import itertools
import math
from dataclasses import dataclass

from .core import LinkTable, TableProtocol
from .verify import verify_ad


class EdgeCollisionError(Exception):
    """Two input values produce identical symbols on both of node 1's links,
    so no receiver can tell them apart."""

    def __init__(self, x1: int, x2: int):
        self.pair = (x1, x2)
        super().__init__(f"inputs {x1} and {x2} collide on both outgoing links")


@dataclass(frozen=True)
class BipartiteRep:
    """Simple bipartite graph whose edges stand for the input values.

    ``edges[x-1]`` is the (left vertex, right vertex) pair of input x, so
    labels are positional and run over exactly 1..M.
    """

    U_size: int
    V_size: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.U_size < 1 or self.V_size < 1:
            raise ValueError("vertex classes must be nonempty")
        seen = {}
        for x, (u, v) in enumerate(self.edges, 1):
            if not (1 <= u <= self.U_size and 1 <= v <= self.V_size):
                raise ValueError(f"edge {x} endpoint ({u},{v}) out of range")
            if (u, v) in seen:
                raise EdgeCollisionError(seen[(u, v)], x)
            seen[(u, v)] = x

    @property
    def M(self) -> int:
        return len(self.edges)


def to_bipartite(t: TableProtocol) -> BipartiteRep:
    """Project a three-node protocol onto its edge graph.

    Requires links 1->2, 1->3 and 2->3 to all be present. Vertices are the
    distinct symbols actually used, renumbered in ascending order.
    """
    if t.n != 3:
        raise ValueError("bipartite view is defined for three-node protocols")
    try:
        ab = t.link(1, 2).symbols
        ac = t.link(1, 3).symbols
        t.link(2, 3)
    except KeyError as missing:
        raise ValueError(f"protocol lacks link {missing.args[0]}") from None
    u_rank = {s: r for r, s in enumerate(sorted(set(ab)), 1)}
    v_rank = {s: r for r, s in enumerate(sorted(set(ac)), 1)}
    edges = tuple((u_rank[ab[x]], v_rank[ac[x]]) for x in range(t.M))
    return BipartiteRep(len(u_rank), len(v_rank), edges)


def _adjacent(e: tuple[int, int], f: tuple[int, int]) -> bool:
    return e[0] == f[0] or e[1] == f[1]


def conflict_pairs(g: BipartiteRep) -> frozenset[tuple[int, int]]:
    """Unordered label pairs any valid third-link table must separate:
    edges sharing an endpoint, or bridged by a common adjacent edge."""
    edges = g.edges
    pairs = set()
    for x, y in itertools.combinations(range(1, g.M + 1), 2):
        e, f = edges[x - 1], edges[y - 1]
        if _adjacent(e, f) or any(
            _adjacent(e, other) and _adjacent(f, other) for other in edges
        ):
            pairs.add((x, y))
    return frozenset(pairs)


@dataclass(frozen=True)
class ColoringInstance:
    """A graph plus one color per edge, valid for the distance-2 constraint.

    Construction re-checks validity, so holding an instance is proof that
    every conflicting pair is separated.
    """

    graph: BipartiteRep
    colors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        if len(self.colors) != self.graph.M:
            raise ValueError(f"{len(self.colors)} colors for {self.graph.M} edges")
        for c in self.colors:
            if c < 1:
                raise ValueError(f"color {c} must be positive")
        for x, y in conflict_pairs(self.graph):
            if self.colors[x - 1] == self.colors[y - 1]:
                raise ValueError(f"edges {x} and {y} conflict but share color {self.colors[x - 1]}")

    @property
    def W_size(self) -> int:
        return max(self.colors)


def strong_edge_color(g: BipartiteRep, W_size: int) -> ColoringInstance | None:
    """Exhaustive backtracking search for a distance-2 edge coloring.

    Edges are colored in label order, colors tried ascending and capped at
    one beyond the count already in use (sound, since color classes are
    interchangeable). Returns the first coloring found, which makes the
    witness deterministic, or None once the space is exhausted."""
    if W_size < 1:
        raise ValueError("W_size must be positive")
    conflicts = {x: set() for x in range(1, g.M + 1)}
    for x, y in conflict_pairs(g):
        conflicts[x].add(y)
        conflicts[y].add(x)
    colors = [0] * g.M

    def assign(x: int, used: int) -> bool:
        if x > g.M:
            return True
        taken = {colors[y - 1] for y in conflicts[x]}
        for c in range(1, min(W_size, used + 1) + 1):
            if c in taken:
                continue
            colors[x - 1] = c
            if assign(x + 1, max(used, c)):
                return True
        colors[x - 1] = 0
        return False

    if assign(1, 0):
        return ColoringInstance(g, tuple(colors))
    return None


def protocol_from_coloring(inst: ColoringInstance) -> TableProtocol:
    """Read the three link tables off a labeled colored graph: input x sends
    its left vertex on 1->2, its right vertex on 1->3, its color on 2->3.
    Symbols are renumbered densely in ascending order."""
    g = inst.graph

    def dense(values):
        rank = {s: r for r, s in enumerate(sorted(set(values)), 1)}
        return tuple(rank[s] for s in values)

    ab = dense(tuple(u for u, _ in g.edges))
    ac = dense(tuple(v for _, v in g.edges))
    bc = dense(inst.colors)
    return TableProtocol(3, g.M, (
        LinkTable(1, 2, ab),
        LinkTable(1, 3, ac),
        LinkTable(2, 3, bc),
    ))


class SearchBudgetError(Exception):
    """The graph enumeration budget ran out before the search finished."""

    def __init__(self, budget: int, frontier: list[tuple[int, int, int]]):
        self.budget = budget
        self.frontier = tuple(frontier)
        super().__init__(
            f"graph budget {budget} exhausted; undecided size triples: {self.frontier}"
        )


@dataclass(frozen=True)
class OptimalResult:
    """Outcome of the exhaustive minimum-product search."""

    U_size: int
    V_size: int
    W_size: int
    product: int
    bits: float
    witness: ColoringInstance
    infeasible: tuple[tuple[int, int, int], ...]


def _canonical(edges: tuple[tuple[int, int], ...], row_perms, col_perms):
    return min(
        tuple(sorted((rp[u - 1], cp[v - 1]) for u, v in edges))
        for rp in row_perms
        for cp in col_perms
    )


def optimal_search(M: int, *, max_alphabet: int = 8, graph_budget: int = 2_000_000) -> OptimalResult:
    """Exact minimum of |U|*|V|*|W| over graphs and colorings holding M edges.

    Size triples are unordered (flipping links permutes the three roles), so
    candidates are a <= b <= c with every pairwise product at least M, tried
    in increasing product with lexicographic tie-break. For each triple, all
    simple M-edge graphs on an a x b grid are enumerated up to independent
    row/column permutation and tested for a c-color strong edge coloring.
    The first feasible triple is optimal; the triples rejected on the way
    are reported alongside the witness.
    """
    if M < 1:
        raise ValueError("alphabet size must be positive")
    if M > max_alphabet:
        raise ValueError(f"M={M} exceeds the exhaustive-search limit {max_alphabet}")

    candidates = sorted(
        (
            (a, b, c)
            for a in range(1, M + 1)
            for b in range(a, M + 1)
            for c in range(b, M + 1)
            if a * b >= M
        ),
        key=lambda t: (t[0] * t[1] * t[2], t),
    )

    work = 0
    infeasible = []
    for pos, (a, b, c) in enumerate(candidates):
        cells = [(u, v) for u in range(1, a + 1) for v in range(1, b + 1)]
        row_perms = list(itertools.permutations(range(1, a + 1)))
        col_perms = list(itertools.permutations(range(1, b + 1)))
        witness = None
        for combo in itertools.combinations(cells, M):
            work += 1
            if work > graph_budget:
                raise SearchBudgetError(graph_budget, candidates[pos:])
            if _canonical(combo, row_perms, col_perms) != combo:
                continue
            inst = strong_edge_color(BipartiteRep(a, b, combo), c)
            if inst is not None:
                witness = inst
                break
        if witness is None:
            infeasible.append((a, b, c))
            continue
        product = a * b * c
        check = verify_ad(protocol_from_coloring(witness))
        if not check.ok:
            raise AssertionError(f"witness for ({a},{b},{c}) fails verification")
        return OptimalResult(a, b, c, product, math.log2(product), witness, tuple(infeasible))
    raise AssertionError("search space exhausted without a feasible triple")
