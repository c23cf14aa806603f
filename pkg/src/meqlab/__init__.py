"""meqlab: build, simulate, verify, transform, and optimize multiparty
equality protocols over synchronous point-to-point links."""

from .coloring import (
    BipartiteRep,
    ColoringInstance,
    EdgeCollisionError,
    OptimalResult,
    SearchBudgetError,
    conflict_pairs,
    optimal_search,
    protocol_from_coloring,
    strong_edge_color,
    to_bipartite,
)
from .constructions import (
    CrossoverReport,
    VectorMapping,
    cd_wrapper,
    complexity_formula_2k,
    crossover_scan,
    extended_table,
    meq3_2k,
    parallel_compose,
    star_protocol,
    table36,
)
from .core import (
    Complexity,
    GeneralProtocol,
    InputVector,
    LinkTable,
    MalformedProtocolError,
    Protocol,
    Step,
    TableProtocol,
    Transcript,
    complexity,
    eq_oracle,
    realized_ranges,
    simulate,
    table_to_general,
    tighten,
)
from .serial import load_protocol, protocol_from_doc, protocol_to_doc, save_protocol
from .transforms import expected_symbol, flip_step, make_iid
from .verify import (
    DEFAULT_BUDGET,
    EnumerationBudgetError,
    Verdict,
    fooling_lower_bound,
    trivial_upper_bound,
    verify_ad,
    verify_cd,
)

__all__ = [
    "BipartiteRep",
    "ColoringInstance",
    "Complexity",
    "CrossoverReport",
    "DEFAULT_BUDGET",
    "EdgeCollisionError",
    "EnumerationBudgetError",
    "GeneralProtocol",
    "InputVector",
    "LinkTable",
    "MalformedProtocolError",
    "OptimalResult",
    "Protocol",
    "SearchBudgetError",
    "Step",
    "TableProtocol",
    "Transcript",
    "VectorMapping",
    "Verdict",
    "cd_wrapper",
    "complexity",
    "complexity_formula_2k",
    "conflict_pairs",
    "crossover_scan",
    "eq_oracle",
    "expected_symbol",
    "extended_table",
    "flip_step",
    "fooling_lower_bound",
    "load_protocol",
    "make_iid",
    "meq3_2k",
    "optimal_search",
    "parallel_compose",
    "protocol_from_coloring",
    "protocol_from_doc",
    "protocol_to_doc",
    "realized_ranges",
    "save_protocol",
    "simulate",
    "star_protocol",
    "strong_edge_color",
    "table36",
    "table_to_general",
    "tighten",
    "to_bipartite",
    "trivial_upper_bound",
    "verify_ad",
    "verify_cd",
]
