"""Scalar and spectral thresholding operators shared by all solvers.

Everything here is elementwise and pure: functions accept scalars or
ndarrays and return matching shapes.  The exact-constraint limit is
encoded by passing ``TAU_INF`` for ``tau``, which switches the
polynomial thresholding rule to a hard threshold.
"""

import math
from dataclasses import dataclass

import numpy as np

# Sentinel for the exact-constraint limit of tau.  float('inf') keeps the
# limit formulas exact (no comparison against a big finite number).
TAU_INF = math.inf


@dataclass(frozen=True)
class OperatorParams:
    """Relaxation weight tau, data-fidelity weight alpha, sparsity weight beta.

    ``tau`` may be ``TAU_INF`` to select the hard-threshold limit.
    """

    tau: float
    alpha: float
    beta: float = 0.0

    def __post_init__(self):
        if not (self.tau > 0):
            raise ValueError(f"tau must be positive (got {self.tau})")
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be finite positive (got {self.alpha})")
        if self.beta < 0:
            raise ValueError(f"beta must be nonnegative (got {self.beta})")


def shrink(x, eps):
    """Soft shrinkage sign(x) * max(|x| - eps, 0), elementwise."""
    if eps < 0:
        raise ValueError("shrinkage threshold must be nonnegative")
    x = np.asarray(x, dtype=float)
    out = np.sign(x) * np.maximum(np.abs(x) - eps, 0.0)
    return float(out) if out.ndim == 0 else out


def p_tau(x, tau):
    """Spectral weight 1 - 1/(tau*x^2) for x > 1/sqrt(tau), else 0.

    For tau = TAU_INF this is the 0/1 indicator of x > 0.
    """
    x = np.asarray(x, dtype=float)
    if tau == TAU_INF:
        out = (x > 0).astype(float)
    else:
        thresh = 1.0 / math.sqrt(tau)
        with np.errstate(divide="ignore"):
            out = np.where(x > thresh, 1.0 - 1.0 / (tau * x**2), 0.0)
    return float(out) if out.ndim == 0 else out


def psi(lam, alpha, tau):
    """Inverse map from a thresholded singular value back to sigma.

    lam + lam^-3/(alpha*tau) above the knee at 1/sqrt(tau), the linear
    ramp (1 + tau/alpha)*lam below it.
    """
    lam = np.asarray(lam, dtype=float)
    thresh = 1.0 / math.sqrt(tau)
    with np.errstate(divide="ignore"):
        upper = lam + lam ** (-3.0) / (alpha * tau)
    lower = lam + (tau / alpha) * lam
    out = np.where(lam > thresh, upper, lower)
    return float(out) if out.ndim == 0 else out


def phi(lam, sigma, alpha, tau):
    """Scalar objective whose minimizer over lam defines poly_threshold."""
    lam = np.asarray(lam, dtype=float)
    fid = (alpha / 2.0) * (sigma - lam) ** 2
    thresh = 1.0 / math.sqrt(tau)
    with np.errstate(divide="ignore"):
        upper = 1.0 - lam ** (-2.0) / (2.0 * tau)
    lower = (tau / 2.0) * lam**2
    out = fid + np.where(lam > thresh, upper, lower)
    return float(out) if out.ndim == 0 else out


def sigma_star(alpha, tau):
    """Branch point of the polynomial thresholding rule."""
    if tau == TAU_INF:
        return math.sqrt(2.0 / alpha)
    return math.sqrt((alpha + tau) / (alpha * tau) + math.sqrt((alpha + tau) / (alpha**2 * tau)))


def _newton_quartic_root(sigma, alpha, tau):
    """Largest root of lam^4 - sigma*lam^3 + 1/(alpha*tau) = 0, or None.

    Safeguarded Newton from lam0 = sigma, bracketed by [3*sigma/4, sigma]
    where the quartic is monotone increasing.  No root exists there when
    the quartic stays positive at the local minimum 3*sigma/4.
    """
    c = 1.0 / (alpha * tau)

    def f(lam):
        return lam**3 * (lam - sigma) + c

    lo, hi = 0.75 * sigma, sigma
    if sigma <= 0 or f(lo) >= 0:
        return None
    lam = sigma
    for _ in range(100):
        flam = f(lam)
        if flam > 0:
            hi = lam
        else:
            lo = lam
        d = lam**2 * (4.0 * lam - 3.0 * sigma)
        step = flam / d if d != 0 else 0.0
        nxt = lam - step
        if not (lo < nxt < hi):
            nxt = 0.5 * (lo + hi)
        if abs(nxt - lam) < 1e-15 * max(1.0, lam):
            return nxt
        lam = nxt
    return lam


def _poly_threshold_exact(sigma, alpha, tau):
    """Global minimizer of phi(., sigma) via candidate comparison."""
    thresh = 1.0 / math.sqrt(tau)
    candidates = [0.0]
    lam_lower = alpha * sigma / (alpha + tau)
    if lam_lower <= thresh:
        candidates.append(lam_lower)
    else:
        candidates.append(thresh)
    root = _newton_quartic_root(sigma, alpha, tau)
    if root is not None and root > thresh:
        candidates.append(root)
    vals = [phi(c, sigma, alpha, tau) for c in candidates]
    # <= keeps the smaller candidate on ties, matching the beta_3 branch rule
    best = min(range(len(candidates)), key=lambda i: (vals[i], candidates[i]))
    return candidates[best]


def poly_threshold(sigma, alpha, tau, mode="paper"):
    """Polynomial thresholding of singular values, elementwise.

    mode="paper" applies the published two-branch rule: identity above
    sigma_star, the linear shrink alpha/(alpha+tau)*sigma at or below it.
    mode="exact" instead returns the true global minimizer of phi, solving
    the stationarity quartic on the upper branch by safeguarded Newton.
    Both modes coincide for tau = TAU_INF, where the rule is a hard
    threshold at sqrt(2/alpha).
    """
    if mode not in ("paper", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    sig = np.asarray(sigma, dtype=float)
    star = sigma_star(alpha, tau)
    if tau == TAU_INF:
        out = np.where(sig > star, sig, 0.0)
    elif mode == "paper":
        out = np.where(sig > star, sig, alpha * sig / (alpha + tau))
    else:
        out = np.vectorize(lambda s: _poly_threshold_exact(s, alpha, tau), otypes=[float])(sig)
    return float(out) if out.ndim == 0 else out
