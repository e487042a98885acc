"""Input validation helpers shared across the package."""

import numpy as np


def check_matrix(X, name="X", allow_empty=False):
    """Return X as a 2-D float64 array, rejecting non-finite entries."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {X.shape}")
    if not allow_empty and (X.shape[0] == 0 or X.shape[1] == 0):
        raise ValueError(f"{name} must have at least one row and one column")
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains non-finite values")
    return X


def check_square(W, name="W"):
    W = check_matrix(W, name=name)
    if W.shape[0] != W.shape[1]:
        raise ValueError(f"{name} must be square, got shape {W.shape}")
    return W


def check_positive(value, name):
    if not value > 0:
        raise ValueError(f"{name} must be positive (got {value})")
    return float(value)
