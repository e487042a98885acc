"""Iterative solvers for the corrupted-data problems.

Three entry points:

* ``ipt_p5``  -- alternating polynomial thresholding / soft shrinkage for
  the model X = A + E + G.
* ``admm_p5`` -- single-multiplier ADMM for the model X = A + E.
* ``gl_admm`` -- two-multiplier ADMM with a graph-smoothness consensus
  variable J penalizing tr(J L J^T).

Passing ``tau=TAU_INF`` in the config selects the exact-constraint
(hard-threshold) variants P6 / GL-P6; no separate code path exists.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .closedform import Decomposition, _svd
from .operators import TAU_INF, p_tau, poly_threshold, shrink
from .validation import check_matrix


@dataclass(frozen=True)
class SolverConfig:
    """All scalar hyperparameters of the iterative solvers.

    Defaults follow the published experiment settings for face clustering
    (tau=0.2, beta=1e-6, gamma=1e-3) and the standard penalty schedule
    (mu0=1e-6, rho=1.1, mu_max=1e6, eps1=1e-8).  ``alpha`` is used by the
    IPT path only.
    """

    tau: float = 0.2
    alpha: float = 10.0
    beta: float = 1e-6
    gamma: float = 1e-3
    mu0: float = 1e-6
    rho: float = 1.1
    mu_max: float = 1e6
    eps1: float = 1e-8
    max_iters: int = 500
    threshold_mode: str = "paper"

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("tau must be positive (or TAU_INF)")
        for name in ("alpha", "mu0", "mu_max", "eps1"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.beta < 0 or self.gamma < 0:
            raise ValueError("beta and gamma must be nonnegative")
        if not self.rho > 1:
            raise ValueError("rho must exceed 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")

    def with_(self, **kwargs):
        return replace(self, **kwargs)


@dataclass(frozen=True)
class IterationRecord:
    """One row of the per-iteration convergence trace."""

    k: int
    primal_residual: float
    consensus_residual: float
    mu1: float
    mu2: float


def _final_c(M, weight, tau, mode):
    """Representation matrix V P_tau(P_{weight,tau}(S)) V^T from svd(M)."""
    _, s, Vt = _svd(M)
    lam = np.atleast_1d(poly_threshold(s, weight, tau, mode=mode))
    return (Vt.T * p_tau(lam, tau)) @ Vt


def ipt_p5(X, cfg=SolverConfig()):
    """Iterative polynomial thresholding for X = A + E + G."""
    X = check_matrix(X, "X")
    A, E = X.copy(), np.zeros_like(X)
    trace = []
    converged = False
    k = 0
    for k in range(1, cfg.max_iters + 1):
        U, s, Vt = _svd(X - E)
        lam = np.atleast_1d(poly_threshold(s, cfg.alpha, cfg.tau, mode=cfg.threshold_mode))
        A_new = (U * lam) @ Vt
        E_new = shrink(X - A_new, cfg.beta / cfg.alpha)
        dA = np.max(np.abs(A_new - A))
        dE = np.max(np.abs(E_new - E))
        A, E = A_new, E_new
        trace.append(IterationRecord(k, max(dA, dE), math.nan, math.nan, math.nan))
        if dA < cfg.eps1 and dE < cfg.eps1:
            converged = True
            break
    C = _final_c(X - E, cfg.alpha, cfg.tau, cfg.threshold_mode)
    return Decomposition(A=A, E=E, C=C, iterations=k, converged=converged, residuals=trace)


def admm_p5(X, cfg=SolverConfig()):
    """ADMM for X = A + E (no Gaussian term)."""
    X = check_matrix(X, "X")
    A = X.copy()
    E = np.zeros_like(X)
    Y = np.zeros_like(X)
    mu = cfg.mu0
    trace = []
    converged = False
    k = 0
    for k in range(1, cfg.max_iters + 1):
        U, s, Vt = _svd(X - E + Y / mu)
        lam = np.atleast_1d(poly_threshold(s, mu, cfg.tau, mode=cfg.threshold_mode))
        A = (U * lam) @ Vt
        E = shrink(X - A + Y / mu, cfg.beta / mu)
        R = X - A - E
        Y = Y + mu * R
        mu = min(cfg.rho * mu, cfg.mu_max)
        primal = np.max(np.abs(R))
        trace.append(IterationRecord(k, primal, math.nan, mu, math.nan))
        if primal < cfg.eps1:
            converged = True
            break
    C = _final_c(X - E + Y / mu, mu, cfg.tau, cfg.threshold_mode)
    return Decomposition(A=A, E=E, C=C, iterations=k, converged=converged, residuals=trace)


def _update_j(A, Y2, mu2, laplacian, gamma):
    """Closed-form minimizer of the graph-smoothness subproblem.

    Solves J (2*gamma*L + mu2*I) = mu2*A - Y2; the system matrix is
    symmetric positive definite for mu2 > 0 and PSD L.
    """
    n = laplacian.shape[0]
    M = 2.0 * gamma * laplacian + mu2 * np.eye(n)
    try:
        factor = cho_factor(M)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - PSD L rules this out
        raise np.linalg.LinAlgError("graph subproblem matrix is not positive definite") from exc
    return cho_solve(factor, (mu2 * A - Y2).T).T


def gl_admm(X, laplacian, cfg=SolverConfig()):
    """Graph-regularized ADMM (GL-P5, or GL-P6 when tau=TAU_INF)."""
    X = check_matrix(X, "X")
    laplacian = check_matrix(laplacian, "laplacian")
    n = X.shape[1]
    if laplacian.shape != (n, n):
        raise ValueError(
            f"laplacian must be {n}x{n} to match the {n} data columns, got {laplacian.shape}"
        )
    A = np.zeros_like(X)
    E = np.zeros_like(X)
    Y1 = np.zeros_like(X)
    Y2 = np.zeros_like(X)
    mu1 = mu2 = cfg.mu0
    trace = []
    converged = False
    k = 0
    for k in range(1, cfg.max_iters + 1):
        J = _update_j(A, Y2, mu2, laplacian, cfg.gamma)
        M = (mu1 * (X - E + Y1 / mu1) + mu2 * (J + Y2 / mu2)) / (mu1 + mu2)
        U, s, Vt = _svd(M)
        lam = np.atleast_1d(poly_threshold(s, mu1 + mu2, cfg.tau, mode=cfg.threshold_mode))
        A = (U * lam) @ Vt
        E = shrink(X - A + Y1 / mu1, cfg.beta / mu1)
        R1 = X - A - E
        R2 = J - A
        Y1 = Y1 + mu1 * R1
        Y2 = Y2 + mu2 * R2
        mu1 = min(cfg.rho * mu1, cfg.mu_max)
        mu2 = min(cfg.rho * mu2, cfg.mu_max)
        primal = np.max(np.abs(R1))
        consensus = np.max(np.abs(R2))
        trace.append(IterationRecord(k, primal, consensus, mu1, mu2))
        if primal < cfg.eps1 and consensus < cfg.eps1:
            converged = True
            break
    M = (mu1 * (X - E + Y1 / mu1) + mu2 * (J + Y2 / mu2)) / (mu1 + mu2)
    C = _final_c(M, mu1 + mu2, cfg.tau, cfg.threshold_mode)
    return Decomposition(A=A, E=E, C=C, iterations=k, converged=converged, residuals=trace)
