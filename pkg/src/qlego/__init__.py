"""Quantum lego: build stabilizer codes by contracting small stabilizer states."""

from .fieldvec import check_modulus
from .symplectic import CheckMatrix, CommutationError, Pauli, is_css, parse_pauli, symplectic_product
from .trace import TraceError, TraceResult, conjoin, self_trace, self_trace_case_analysis, single_trace
from .network import BuiltState, Lego, NetworkError, TensorNetwork, build, plan_contraction
from .duality import CodeReport, augment, describe, extract, gauge_fix
from .analysis import (
    BudgetExceeded,
    distance,
    is_correctable_erasure,
    is_maximally_mixed,
    subgroup_rank_within,
)
from .legos import builtin
from .pushing import MatchingTable, find_representation, flow_decomposition, verify_symbolic
from .decoder import depolarizing, export_tl, ml_decode, monte_carlo
from . import builders, io

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "BuiltState",
    "CheckMatrix",
    "CodeReport",
    "CommutationError",
    "Lego",
    "MatchingTable",
    "NetworkError",
    "Pauli",
    "TensorNetwork",
    "TraceError",
    "TraceResult",
    "augment",
    "build",
    "builders",
    "builtin",
    "check_modulus",
    "conjoin",
    "depolarizing",
    "describe",
    "distance",
    "export_tl",
    "extract",
    "find_representation",
    "flow_decomposition",
    "gauge_fix",
    "io",
    "is_correctable_erasure",
    "is_css",
    "is_maximally_mixed",
    "ml_decode",
    "monte_carlo",
    "parse_pauli",
    "plan_contraction",
    "self_trace",
    "self_trace_case_analysis",
    "single_trace",
    "subgroup_rank_within",
    "symplectic_product",
    "verify_symbolic",
]
