"""Exhaustive correctness checks and the closed-form complexity bounds.

Both problem flavours are decided by replaying the protocol on every one of
the M**n input vectors; sampling can never certify a universally quantified
contract, so an instance too large for the budget is refused outright.
"""

import math
from dataclasses import dataclass

from .core import Protocol, decisions_on, eq_oracle, input_space

DEFAULT_BUDGET = 10**8


class EnumerationBudgetError(Exception):
    """The input space exceeds the enumeration budget; nothing was checked."""

    def __init__(self, n: int, M: int, budget: int):
        self.n = n
        self.M = M
        self.budget = budget
        self.required = M**n
        super().__init__(f"{M}**{n} = {self.required} input vectors exceed budget {budget}")


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exhaustive check.

    When `ok` is false, `counterexample` holds the offending input tuple and
    the decision tuple it produced; replaying the protocol on that input
    reproduces the violation. The reported counterexample is the
    lexicographically smallest one.
    """

    ok: bool
    counterexample: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    vectors_checked: int = 0


def _guarded_space(p: Protocol, budget: int):
    total = p.M**p.n
    if total > budget:
        raise EnumerationBudgetError(p.n, p.M, budget)
    return input_space(p.n, p.M), total


def verify_ad(p: Protocol, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Does some node flag every unequal input, and none flag an equal one?

    ok iff for every input vector: (all decisions 0) <=> (all inputs equal).
    """
    space, total = _guarded_space(p, budget)
    for values in space:
        decisions = decisions_on(p, values)
        flagged = 1 if any(decisions) else 0
        if flagged != eq_oracle(values):
            return Verdict(False, (values, tuple(decisions)), total)
    return Verdict(True, None, total)


def verify_cd(p: Protocol, detector: int | None = None, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Does the detector node output the exact equality bit on every input?

    Other nodes' decisions are unconstrained. `detector` defaults to node n.
    """
    node = p.n if detector is None else detector
    if not 1 <= node <= p.n:
        raise ValueError(f"detector {node} outside 1..{p.n}")
    space, total = _guarded_space(p, budget)
    for values in space:
        decisions = decisions_on(p, values)
        if decisions[node - 1] != eq_oracle(values):
            return Verdict(False, (values, tuple(decisions)), total)
    return Verdict(True, None, total)


def fooling_lower_bound(n: int, M: int) -> float:
    """(n/2)*log2(M): pigeonhole over the communication crossing each
    one-node-vs-rest cut, summed over all n cuts. Every correct protocol,
    of either flavour, costs at least this many bits."""
    if n < 2:
        raise ValueError("need at least two nodes")
    if M < 1:
        raise ValueError("alphabet size must be positive")
    return n * math.log2(M) / 2


def trivial_upper_bound(n: int, M: int) -> float:
    """(n-1)*log2(M): everyone forwards their raw value to one collector."""
    if n < 2:
        raise ValueError("need at least two nodes")
    if M < 1:
        raise ValueError("alphabet size must be positive")
    return (n - 1) * math.log2(M)
