"""Zero forcing and failed zero forcing on digraphs."""

from .classify import ClassKind, Classification, classify_f_less_than_z, classify_oriented, critical_threshold
from .closed_forms import (
    FamilyMismatch,
    UndefinedMetric,
    construct_weak_cycle,
    f_auto,
    f_line_digraph,
    f_weak_cycle,
    f_weak_path,
)
from .digraph import (
    Digraph,
    Orientation,
    complement,
    complete,
    de_bruijn,
    directed_cycle,
    disjoint_union,
    empty,
    format_digraph,
    kautz,
    line_digraph,
    outjoin,
    parse_digraph,
    star,
    to_dot,
    weak_cycle,
    weak_path,
)
from .forcing import ForcingTrace, closure, is_critical, is_stalled, is_zfs
from .minrank import sample_pattern_matrix, verify_kernel_support
from .solvers import (
    SearchBoundExceeded,
    Solution,
    enumerate_maximal_fzfs,
    enumerate_minimal_zfs,
    extremal_predicates,
    failed_zero_forcing_number,
    min_critical_set,
    zero_forcing_number,
)

__version__ = "0.1.0"

__all__ = [
    "ClassKind", "Classification", "classify_f_less_than_z", "classify_oriented", "critical_threshold",
    "FamilyMismatch", "UndefinedMetric", "construct_weak_cycle", "f_auto", "f_line_digraph",
    "f_weak_cycle", "f_weak_path",
    "Digraph", "Orientation", "complement", "complete", "de_bruijn", "directed_cycle", "disjoint_union",
    "empty", "format_digraph", "kautz", "line_digraph", "outjoin", "parse_digraph", "star", "to_dot",
    "weak_cycle", "weak_path",
    "ForcingTrace", "closure", "is_critical", "is_stalled", "is_zfs",
    "sample_pattern_matrix", "verify_kernel_support",
    "SearchBoundExceeded", "Solution", "enumerate_maximal_fzfs", "enumerate_minimal_zfs",
    "extremal_predicates", "failed_zero_forcing_number", "min_critical_set", "zero_forcing_number",
]
