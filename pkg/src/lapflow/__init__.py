"""Few-eigenpair approximations of the graph Laplacian pseudoinverse,
applied to current-flow betweenness centrality."""

from .graph import Graph, from_edge_list, dense_laplacian
from .spectral import (
    EigenBasis,
    DensePinv,
    smallest_eigenpairs,
    largest_eigenvalue,
    exact_pinv,
    dense_eigenbasis,
    solve_min_norm,
)
from .approx import (
    PinvOperator,
    ExactPinv,
    CutoffPinv,
    StretchPinv,
    build_cutoff,
    build_stretch,
    optimal_sigma,
    approx_sigma,
    error_bounds,
)
from .flow import (
    SupplyPair,
    FlowResult,
    BetweennessScores,
    solve_flow,
    flow_through_node,
    betweenness,
    betweenness_fiedler,
)
from .models import gen_er, gen_ba
from .metrics import (
    RankingReport,
    EigenDegreeProfile,
    compare_rankings,
    rel_2norm_error,
    eigen_degree_profile,
    dense_ranks,
    spectral_norm,
)
from .bench import BenchRecord, bench_scaling
from .estimators import (
    LaplacianPseudoinverse,
    CurrentFlowBetweenness,
    build_operator,
    check_graph,
)

__version__ = "0.1.0"

__all__ = [
    "Graph", "from_edge_list", "dense_laplacian",
    "EigenBasis", "DensePinv", "smallest_eigenpairs", "largest_eigenvalue",
    "exact_pinv", "dense_eigenbasis", "solve_min_norm",
    "PinvOperator", "ExactPinv", "CutoffPinv", "StretchPinv",
    "build_cutoff", "build_stretch", "optimal_sigma", "approx_sigma", "error_bounds",
    "SupplyPair", "FlowResult", "BetweennessScores",
    "solve_flow", "flow_through_node", "betweenness", "betweenness_fiedler",
    "gen_er", "gen_ba",
    "RankingReport", "EigenDegreeProfile", "compare_rankings", "rel_2norm_error",
    "eigen_degree_profile", "dense_ranks", "spectral_norm",
    "BenchRecord", "bench_scaling",
    "LaplacianPseudoinverse", "CurrentFlowBetweenness", "build_operator", "check_graph",
]
