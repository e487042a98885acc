"""Closed-form SVD solvers for the uncorrupted (P1/P2) and noisy (P3/P4) problems."""

from dataclasses import dataclass, field

import numpy as np

from .operators import TAU_INF, p_tau, poly_threshold
from .validation import check_matrix, check_positive


@dataclass
class Decomposition:
    """Solver output: clean dictionary A, sparse error E, representation C."""

    A: np.ndarray
    E: np.ndarray
    C: np.ndarray
    iterations: int = 0
    converged: bool = True
    residuals: list = field(default_factory=list)


def _svd(M):
    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    return U, s, Vt


def numerical_rank(s, shape):
    """Indices of singular values above the standard numerical-rank cutoff."""
    if s.size == 0 or s[0] == 0:
        return 0
    tol = max(shape) * np.finfo(float).eps * s[0]
    return int(np.count_nonzero(s > tol))


def solve_p1(A, tau):
    """Representation for uncorrupted data under the relaxed constraint.

    C = V diag(p_tau(s)) V^T from the SVD of A.
    """
    A = check_matrix(A, "A")
    check_positive(tau, "tau")
    _, s, Vt = _svd(A)
    w = p_tau(s, tau)
    return (Vt.T * w) @ Vt


def solve_p2(A):
    """Representation for uncorrupted data under the exact constraint.

    C = V1 V1^T, an orthogonal projection onto the row space of A.
    """
    A = check_matrix(A, "A")
    _, s, Vt = _svd(A)
    r = numerical_rank(s, A.shape)
    V1 = Vt[:r].T
    return V1 @ V1.T


def solve_p3(X, alpha, tau, mode="paper"):
    """Joint clean-dictionary / representation solution for noisy data.

    Polynomially thresholds the spectrum of X to get A, then applies the
    p_tau weights in the same singular basis to get C.
    """
    X = check_matrix(X, "X")
    check_positive(alpha, "alpha")
    check_positive(tau, "tau")
    U, s, Vt = _svd(X)
    lam = np.atleast_1d(poly_threshold(s, alpha, tau, mode=mode))
    A = (U * lam) @ Vt
    C = (Vt.T * p_tau(lam, tau)) @ Vt
    return Decomposition(A=A, E=np.zeros_like(X), C=C)


def solve_p4(X, alpha):
    """Hard-threshold solution for noisy data under the exact constraint.

    Keeps singular values above sqrt(2/alpha); C projects onto the kept
    right singular subspace.
    """
    X = check_matrix(X, "X")
    check_positive(alpha, "alpha")
    U, s, Vt = _svd(X)
    keep = s > np.sqrt(2.0 / alpha)
    U1, s1, V1t = U[:, keep], s[keep], Vt[keep]
    A = (U1 * s1) @ V1t
    C = V1t.T @ V1t
    return Decomposition(A=A, E=np.zeros_like(X), C=C)
