"""Core-formation probabilities in k-uniform random hypergraphs.

Formulas (connectivity recursion, covering heuristic, interleaving bounds),
a seeded Monte Carlo simulator, and exhaustive desk-scale oracles that keep
the formulas honest.
"""
from .global_prob import (
    GlobalComputation,
    GlobalResult,
    LocalProvider,
    at_least_one_bound,
    exactly_one_core,
    interleaving_bounds,
)
from .hypergraph import (
    Hypergraph,
    HypergraphParams,
    candidate_edges,
    enumerate_all,
    generate,
    has_rcore_on,
    is_connected_on,
    peel,
)
from .local_prob import (
    ConnectivityTable,
    connectivity_prob,
    covering_prob,
    cross_edge_count,
    gilbert_prob,
    interleaved_local_prob,
)
from .montecarlo import (
    McEstimate,
    exact_exactly_one,
    exact_global,
    exact_local,
    mc_global,
    mc_local,
)
from .numerics import (
    PROB_TOL,
    ProbValue,
    binom_cdf,
    binom_pmf,
    choose,
    choose_float,
    stable_sum,
)
from .sweep import BreakdownDetector, SweepSpec, find_breakdown, run_sweep

__version__ = "0.1.0"

__all__ = [
    "BreakdownDetector",
    "ConnectivityTable",
    "GlobalComputation",
    "GlobalResult",
    "Hypergraph",
    "HypergraphParams",
    "LocalProvider",
    "McEstimate",
    "PROB_TOL",
    "ProbValue",
    "SweepSpec",
    "at_least_one_bound",
    "binom_cdf",
    "binom_pmf",
    "candidate_edges",
    "choose",
    "choose_float",
    "connectivity_prob",
    "covering_prob",
    "cross_edge_count",
    "enumerate_all",
    "exact_exactly_one",
    "exact_global",
    "exact_local",
    "exactly_one_core",
    "find_breakdown",
    "generate",
    "gilbert_prob",
    "has_rcore_on",
    "interleaved_local_prob",
    "interleaving_bounds",
    "is_connected_on",
    "mc_global",
    "mc_local",
    "peel",
    "run_sweep",
    "stable_sum",
    "__version__",
]
