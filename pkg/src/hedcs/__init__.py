"""Fully dynamic approximate maximum matching via hierarchical EDCS."""

from __future__ import annotations

from .bounds import (
    alpha_from_f,
    analytic_alpha,
    build_lp,
    check_h_recurrence,
    export_lp_file,
    solve_lp,
    trivial_alpha,
)
from .engine import AMORTIZED, DEAMORTIZED, Hedcs, add_layer, build, preprocess
from .errors import (
    DomainError,
    GraphError,
    HedcsError,
    InvariantViolation,
    ParameterError,
    SizeExceededError,
    TraceError,
)
from .graph import RankedDynamicGraph, compute_level_probs, edge_key
from .harness import EngineConfig, bounds_report, generate_trace, run_trace, scaling_bench
from .matching import Matching, MaximalMatchingMaintainer, approx_max_matching, maximum_matching_exact
from .sparsify import DegreeCappedEngine, MarkedSubgraph, capped_delta_prime, wrap_update
from .verify import HedcsWitness, check_sampled_matching, check_state_invariants, is_valid_hedcs

__version__ = "0.1.0"

__all__ = [
    "AMORTIZED", "DEAMORTIZED", "DegreeCappedEngine", "DomainError", "EngineConfig", "GraphError",
    "Hedcs", "HedcsError", "HedcsWitness", "InvariantViolation", "MarkedSubgraph", "Matching",
    "MaximalMatchingMaintainer", "ParameterError", "RankedDynamicGraph", "SizeExceededError",
    "TraceError", "add_layer", "alpha_from_f", "analytic_alpha", "approx_max_matching",
    "bounds_report", "build", "build_lp", "capped_delta_prime", "check_h_recurrence",
    "check_sampled_matching", "check_state_invariants", "compute_level_probs", "edge_key",
    "export_lp_file", "generate_trace", "is_valid_hedcs", "maximum_matching_exact", "preprocess",
    "run_trace", "scaling_bench", "solve_lp", "trivial_alpha", "wrap_update",
]
