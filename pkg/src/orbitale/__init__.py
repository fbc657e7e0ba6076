"""Coset-graph toolkit for pentavalent arc-transitive graph enumeration."""

from .canon import are_isomorphic, automorphism_group, canonical_form
from .graphcore import (
    Graph,
    decode_graph6,
    encode_graph6,
    graph_from_edges,
    is_normal_cover,
    quotient_graph,
    s_arc_transitivity,
)
from .groupzoo import filter_simple_orders
from .orbital import GraphCandidate, dump_candidates, enumerate_pentavalent
from .permcore import (
    CosetAction,
    PermGroup,
    Permutation,
    coset_action,
    find_subgroups_of_order,
    point_stabilizer,
    recognize_small_group,
    suborbits,
)
from .verify import ROWS, SUITES, run_suite, serialize_reports, verify_row

__version__ = "0.1.0"

__all__ = [
    "CosetAction",
    "Graph",
    "GraphCandidate",
    "PermGroup",
    "Permutation",
    "ROWS",
    "SUITES",
    "are_isomorphic",
    "automorphism_group",
    "canonical_form",
    "coset_action",
    "decode_graph6",
    "dump_candidates",
    "encode_graph6",
    "enumerate_pentavalent",
    "filter_simple_orders",
    "find_subgroups_of_order",
    "graph_from_edges",
    "is_normal_cover",
    "point_stabilizer",
    "quotient_graph",
    "recognize_small_group",
    "run_suite",
    "s_arc_transitivity",
    "serialize_reports",
    "suborbits",
    "verify_row",
]
