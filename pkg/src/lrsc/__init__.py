"""Low rank subspace clustering with graph Laplacian regularization."""

from .closedform import Decomposition, solve_p1, solve_p2, solve_p3, solve_p4
from .cluster import LowRankSubspaceClustering
from .datasets import (
    DatasetDescriptor,
    SyntheticSpec,
    generate_synthetic,
    load_matrix,
    load_mnist,
    load_usps,
    load_yaleb,
    save_matrix,
    subsample_per_class,
)
from .graph import GraphModel, build_graph, knn_similarity, laplacian, symmetrize
from .operators import TAU_INF, OperatorParams, p_tau, phi, poly_threshold, psi, shrink, sigma_star
from .solvers import IterationRecord, SolverConfig, admm_p5, gl_admm, ipt_p5
from .spectral import (
    ClusteringResult,
    affinity_from_c,
    clustering_accuracy,
    spectral_cluster,
)

__version__ = "0.1.0"

__all__ = [
    "ClusteringResult",
    "DatasetDescriptor",
    "Decomposition",
    "GraphModel",
    "IterationRecord",
    "LowRankSubspaceClustering",
    "OperatorParams",
    "SolverConfig",
    "SyntheticSpec",
    "TAU_INF",
    "admm_p5",
    "affinity_from_c",
    "build_graph",
    "clustering_accuracy",
    "generate_synthetic",
    "gl_admm",
    "ipt_p5",
    "knn_similarity",
    "laplacian",
    "load_matrix",
    "load_mnist",
    "load_usps",
    "load_yaleb",
    "p_tau",
    "phi",
    "poly_threshold",
    "psi",
    "save_matrix",
    "shrink",
    "sigma_star",
    "solve_p1",
    "solve_p2",
    "solve_p3",
    "solve_p4",
    "spectral_cluster",
    "subsample_per_class",
    "symmetrize",
]
