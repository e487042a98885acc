"""Scikit-learn style estimator wrapping the full clustering pipeline."""

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils import check_array

from . import closedform, solvers
from .graph import build_graph
from .operators import TAU_INF
from .spectral import affinity_from_c, spectral_cluster

SOLVERS = ("p1", "p2", "p3", "p4", "p5-ipt", "p5-admm", "p6", "gl-p5", "gl-p6")
GRAPH_SOLVERS = ("gl-p5", "gl-p6")


class LowRankSubspaceClustering(BaseEstimator, ClusterMixin):
    """Subspace clustering through a low rank self-representation.

    Decomposes the data into a clean self-expressive dictionary plus sparse
    errors, builds an affinity from the representation matrix and applies
    spectral clustering.  The ``solver`` parameter selects the problem
    variant: closed-form SVD solutions for clean/noisy data (p1-p4),
    iterative solvers for grossly corrupted data (p5-*, p6), and their
    graph-Laplacian-regularized extensions (gl-p5, gl-p6).

    Parameters
    ----------
    n_clusters : int, number of subspaces to recover.
    solver : str, one of %s.
    tau : float, weight of the self-expression term (ignored by the
        exact-constraint variants p2, p4, p6 and gl-p6).
    alpha : float, data-fidelity weight for p3, p4 and p5-ipt.
    beta : float, sparse-error weight for the iterative solvers.
    gamma : float, graph-smoothness weight for gl-p5 / gl-p6.
    n_neighbors : int, K of the K-nearest-neighbor similarity graph.
    symmetrization : str, graph symmetrization policy.
    mu0, rho, mu_max, eps1, max_iters : ADMM penalty schedule and stopping.
    random_state : int, seed for the k-means step.
    n_init : int, k-means restarts.

    Attributes
    ----------
    representation_matrix_ : (n_samples, n_samples) symmetric matrix C.
    dictionary_ : (n_features, n_samples) clean dictionary, transposed back
        to sklearn orientation.
    errors_ : sparse error matrix in the same orientation.
    labels_ : cluster label of each sample.
    n_iter_ : iterations used by the solver (0 for closed forms).
    converged_ : whether the iterative solver met its tolerance.
    """ % (SOLVERS,)

    def __init__(
        self,
        n_clusters=8,
        solver="gl-p5",
        tau=0.2,
        alpha=10.0,
        beta=1e-6,
        gamma=1e-3,
        n_neighbors=10,
        symmetrization="mutual-max",
        mu0=1e-6,
        rho=1.1,
        mu_max=1e6,
        eps1=1e-8,
        max_iters=500,
        random_state=None,
        n_init=20,
    ):
        self.n_clusters = n_clusters
        self.solver = solver
        self.tau = tau
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma
        self.n_neighbors = n_neighbors
        self.symmetrization = symmetrization
        self.mu0 = mu0
        self.rho = rho
        self.mu_max = mu_max
        self.eps1 = eps1
        self.max_iters = max_iters
        self.random_state = random_state
        self.n_init = n_init

    def _solver_config(self, tau):
        return solvers.SolverConfig(
            tau=tau,
            alpha=self.alpha,
            beta=self.beta,
            gamma=self.gamma,
            mu0=self.mu0,
            rho=self.rho,
            mu_max=self.mu_max,
            eps1=self.eps1,
            max_iters=self.max_iters,
        )

    def _decompose(self, X):
        """Run the selected solver on a p x n (column-sample) matrix."""
        if self.solver not in SOLVERS:
            raise ValueError(f"solver must be one of {SOLVERS}, got {self.solver!r}")
        if self.solver == "p1":
            C = closedform.solve_p1(X, self.tau)
            return closedform.Decomposition(A=X.copy(), E=np.zeros_like(X), C=C)
        if self.solver == "p2":
            C = closedform.solve_p2(X)
            return closedform.Decomposition(A=X.copy(), E=np.zeros_like(X), C=C)
        if self.solver == "p3":
            return closedform.solve_p3(X, self.alpha, self.tau)
        if self.solver == "p4":
            return closedform.solve_p4(X, self.alpha)
        tau = TAU_INF if self.solver in ("p6", "gl-p6") else self.tau
        cfg = self._solver_config(tau)
        if self.solver == "p5-ipt":
            return solvers.ipt_p5(X, cfg)
        if self.solver in ("p5-admm", "p6"):
            return solvers.admm_p5(X, cfg)
        graph = build_graph(X, self.n_neighbors, self.symmetrization)
        return solvers.gl_admm(X, graph.L, cfg)

    def fit(self, X, y=None):
        """Decompose X, build the affinity and spectrally cluster it.

        X follows the sklearn convention (n_samples, n_features); samples
        become columns internally.
        """
        X = check_array(X, dtype=np.float64)
        decomposition = self._decompose(X.T)
        self.decomposition_ = decomposition
        self.representation_matrix_ = decomposition.C
        self.dictionary_ = decomposition.A.T
        self.errors_ = decomposition.E.T
        self.n_iter_ = decomposition.iterations
        self.converged_ = decomposition.converged
        self.affinity_matrix_ = affinity_from_c(decomposition.C)
        seed = 0 if self.random_state is None else self.random_state
        result = spectral_cluster(
            self.affinity_matrix_, self.n_clusters, seed=seed, n_init=self.n_init
        )
        self.labels_ = result.labels
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_
