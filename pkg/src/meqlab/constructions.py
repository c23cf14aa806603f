"""Every concrete protocol family in the workbench.

The six-value three-node protocol (27 symbol combinations instead of the
obvious 36) is the seed; the other builders either widen it, run it once per
digit of a vector encoding, or frame its symbols into fixed-width binary
words. The integer formula for the binary construction and the scan of its
crossover against the 2k-bit baseline live here too, as does the wrapper
that turns any anyone-detects protocol into a centralized-detect one.
"""

from dataclasses import dataclass

from .core import (
    GeneralProtocol,
    LinkTable,
    TableProtocol,
    _run_table,
    materialize,
)
from .verify import DEFAULT_BUDGET, verify_ad


def star_protocol(n: int, M: int) -> TableProtocol:
    """Everyone sends their raw value to the last node, which compares."""
    identity = tuple(range(1, M + 1))
    links = tuple(LinkTable(i, n, identity) for i in range(1, n))
    return TableProtocol(n, M, links)


def table36() -> TableProtocol:
    """Three-node protocol for six values with three symbols per link.

    Each link partitions the six inputs into three classes; the partitions
    are chosen so any two distinct values are separated on some link visible
    to a common node.
    """
    return TableProtocol(3, 6, (
        LinkTable(1, 2, (1, 1, 2, 2, 3, 3)),
        LinkTable(1, 3, (1, 2, 2, 3, 3, 1)),
        LinkTable(2, 3, (1, 2, 3, 1, 2, 3)),
    ))


def extended_table(h: int) -> TableProtocol:
    """Widen the six-value tables to M = 6**h in one shot.

    First link pairs consecutive inputs, second link pairs them shifted by
    one with wraparound, third link cycles three symbols. Reduces to
    table36() at h=1; costs (M/2) * (M/2) * 3 symbol combinations.
    """
    if h < 1:
        raise ValueError("h must be at least 1")
    M = 6**h
    half = M // 2
    ab = tuple((x + 1) // 2 for x in range(1, M + 1))
    ac = tuple((x // 2) % half + 1 for x in range(1, M + 1))
    bc = tuple((x - 1) % 3 + 1 for x in range(1, M + 1))
    return TableProtocol(3, M, (
        LinkTable(1, 2, ab),
        LinkTable(1, 3, ac),
        LinkTable(2, 3, bc),
    ))


@dataclass(frozen=True)
class VectorMapping:
    """Injective encoding of the inputs 1..M as length-h digit vectors.

    ``digits[x-1]`` is the vector for input x; every coordinate lies in
    1..base. Injectivity is what lets per-coordinate equality checks decide
    equality of the original values.
    """

    M: int
    h: int
    base: int
    digits: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(tuple(d) for d in self.digits))
        if len(self.digits) != self.M:
            raise ValueError(f"{len(self.digits)} vectors for M={self.M}")
        for vec in self.digits:
            if len(vec) != self.h:
                raise ValueError(f"vector {vec} does not have {self.h} coordinates")
            for d in vec:
                if not 1 <= d <= self.base:
                    raise ValueError(f"digit {d} outside 1..{self.base}")
        if len(set(self.digits)) != self.M:
            raise ValueError("digit mapping is not injective")

    @classmethod
    def radix(cls, M: int, base: int, h: int | None = None) -> "VectorMapping":
        """Big-endian base-`base` digits of x-1, each shifted up by one."""
        if h is None:
            h = least_exponent(base, M)
        if base**h < M:
            raise ValueError(f"{base}**{h} cannot hold {M} values")
        digits = []
        for x in range(M):
            vec = []
            for _ in range(h):
                vec.append(x % base + 1)
                x //= base
            digits.append(tuple(reversed(vec)))
        return cls(M, h, base, tuple(digits))


def least_exponent(base: int, value: int) -> int:
    """Smallest e >= 0 with base**e >= value, by integer comparison."""
    if base < 2 or value < 1:
        raise ValueError("need base >= 2 and value >= 1")
    e, power = 0, 1
    while power < value:
        e += 1
        power *= base
    return e


def parallel_compose(base: TableProtocol, mapping: VectorMapping) -> TableProtocol:
    """Run one instance of `base` per digit position, bundling each link's
    per-digit symbols into a single combined symbol.

    Requires the mapping's digits to be inputs of `base`; the combined
    ranges are tightened, so the cost never exceeds h times the base cost.
    """
    if mapping.base > base.M:
        raise ValueError(f"digits run to {mapping.base} but base protocol holds {base.M} values")
    links = []
    for lk in base.links:
        tuples = [
            tuple(lk.symbols[d - 1] for d in mapping.digits[x - 1])
            for x in range(1, mapping.M + 1)
        ]
        order = {tup: rank for rank, tup in enumerate(sorted(set(tuples)), 1)}
        links.append(LinkTable(lk.sender, lk.receiver, tuple(order[tup] for tup in tuples)))
    return TableProtocol(base.n, mapping.M, tuple(links))


def meq3_2k(k: int) -> TableProtocol:
    """Binary-framed three-node protocol for M = 2**k.

    Inputs become base-6 digit vectors of length h = least power of 6
    reaching 2**k; each digit runs through the six-value protocol; each
    link's h three-way symbols are packed big-endian into one word framed as
    b = ceil(h*log2(3)) bits. Every link declares the full 2**b range (the
    word is transmitted bit by bit), so the cost is exactly 3b bits.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    M = 2**k
    h = least_exponent(6, M)
    b = least_exponent(2, 3**h)
    mapping = VectorMapping.radix(M, 6, h)
    links = []
    for lk in table36().links:
        words = []
        for x in range(1, M + 1):
            word = 0
            for d in mapping.digits[x - 1]:
                word = word * 3 + (lk.symbols[d - 1] - 1)
            words.append(word + 1)
        links.append(LinkTable(lk.sender, lk.receiver, tuple(words), range_size=2**b))
    return TableProtocol(3, M, tuple(links))


def complexity_formula_2k(k: int) -> int:
    """Bit cost 3*ceil(h*log2(3)), h = ceil(k*log6(2)), of meq3_2k(k).

    Evaluated purely with integer power comparisons: near ties (such as
    k=39, where the cost equals the 2k baseline exactly) float rounding
    would corrupt the staircase.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    h = least_exponent(6, 2**k)
    return 3 * least_exponent(2, 3**h)


@dataclass(frozen=True)
class CrossoverReport:
    """Formula cost versus the 2k baseline for every k up to k_max.

    `rows` holds (k, cost bits, 2k); `strict_ks` the k where cost < 2k.
    """

    k_max: int
    rows: tuple[tuple[int, int, int], ...]
    strict_ks: frozenset[int]


def crossover_scan(k_max: int) -> CrossoverReport:
    """Tabulate the binary construction against 2k and confirm it wins
    strictly for every k from 40 to k_max."""
    if k_max < 40:
        raise ValueError("k_max must be at least 40")
    rows = tuple((k, complexity_formula_2k(k), 2 * k) for k in range(1, k_max + 1))
    strict = frozenset(k for k, cost, upper in rows if cost < upper)
    violations = [k for k in range(40, k_max + 1) if k not in strict]
    if violations:
        raise AssertionError(f"cost fails to beat 2k at k={violations}")
    return CrossoverReport(k_max, rows, strict)


def cd_wrapper(p: TableProtocol, budget: int = DEFAULT_BUDGET) -> GeneralProtocol:
    """Turn an anyone-detects protocol into a centralized-detect one.

    After the base schedule, every interior node (ids 2..n-1) reports its
    decision bit to node n over one declared-binary step; node n outputs the
    maximum of its own decision and the reported ones. Node 1 never receives
    anything and so never detects, which is why it sends no report. Costs
    exactly n-2 extra bits. Rejects a base that fails the anyone-detects
    check.
    """
    verdict = verify_ad(p, budget)
    if not verdict.ok:
        raise ValueError(
            f"base protocol is incorrect (counterexample {verdict.counterexample[0]}); refusing to wrap"
        )
    reporters = list(range(2, p.n))
    schedule = [(lk.sender, lk.receiver) for lk in p.links]
    schedule += [(i, p.n) for i in reporters]

    overrides = {
        index: lk.range_size
        for index, lk in enumerate(p.links, 1)
        if lk.range_size > max(lk.symbols)
    }
    for offset in range(len(reporters)):
        overrides[len(p.links) + offset + 1] = 2

    def semantics(values):
        symbols, _, _, decisions = _run_table(p, values)
        reports = [decisions[i - 1] + 1 for i in reporters]
        final = list(decisions)
        final[p.n - 1] = max([decisions[p.n - 1]] + [r - 1 for r in reports])
        return symbols + reports, final

    return materialize(p.n, p.M, schedule, semantics, overrides)
