"""K-nearest-neighbor similarity graphs and the unnormalized Laplacian."""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .validation import check_matrix, check_square

SYMMETRIZATION_POLICIES = ("mutual-max", "average", "none")


@dataclass
class GraphModel:
    """Similarity W, degree D, Laplacian L = D - W, neighbor count K."""

    W: np.ndarray
    D: np.ndarray
    L: np.ndarray
    K: int
    symmetrization: str = "none"


def knn_similarity(X, K):
    """0/1 K-nearest-neighbor similarity over the columns of X.

    W[i, j] = 1 iff column j is among the K nearest (Euclidean) neighbors
    of column i, excluding i itself.  The result is generally asymmetric;
    ties at equal distance are broken toward the smaller column index.
    """
    X = check_matrix(X, "X")
    n = X.shape[1]
    if not 1 <= K < n:
        raise ValueError(f"K must satisfy 1 <= K < n={n}, got {K}")
    dist = cdist(X.T, X.T)
    np.fill_diagonal(dist, np.inf)
    # stable sort keeps index order on ties
    order = np.argsort(dist, axis=1, kind="stable")[:, :K]
    W = np.zeros((n, n))
    rows = np.repeat(np.arange(n), K)
    W[rows, order.ravel()] = 1.0
    D, L = laplacian(W)
    return GraphModel(W=W, D=D, L=L, K=K, symmetrization="none")


def symmetrize(W, policy="mutual-max"):
    """Symmetrize a similarity matrix.

    mutual-max keeps an edge if either direction exists (elementwise max,
    preserving 0/1 weights); average halves one-directional edges; none is
    the identity.
    """
    W = check_square(W, "W")
    if policy == "mutual-max":
        return np.maximum(W, W.T)
    if policy == "average":
        return (W + W.T) / 2.0
    if policy == "none":
        return W.copy()
    raise ValueError(f"unknown symmetrization policy {policy!r}")


def laplacian(W):
    """Degree matrix and unnormalized Laplacian L = D - W."""
    W = check_square(W, "W")
    if np.any(W < 0):
        raise ValueError("W must be nonnegative")
    D = np.diag(W.sum(axis=1))
    return D, D - W


def build_graph(X, K, policy="mutual-max"):
    """knn_similarity followed by symmetrization; the usual entry point."""
    model = knn_similarity(X, K)
    W = symmetrize(model.W, policy)
    D, L = laplacian(W)
    return GraphModel(W=W, D=D, L=L, K=K, symmetrization=policy)


def save_triplets(path, W, tol=0.0):
    """Write nonzero entries of W as 'row col value' lines."""
    W = check_square(W, "W")
    rows, cols = np.nonzero(np.abs(W) > tol)
    with open(path, "w") as fh:
        fh.write(f"# {W.shape[0]} {W.shape[1]}\n")
        for i, j in zip(rows, cols):
            fh.write(f"{i} {j} {W[i, j]:.17g}\n")


def load_triplets(path):
    """Read a matrix written by save_triplets."""
    with open(path) as fh:
        header = fh.readline()
        if not header.startswith("#"):
            raise ValueError(f"{path}: missing triplet header")
        nrows, ncols = (int(tok) for tok in header[1:].split())
        W = np.zeros((nrows, ncols))
        for line in fh:
            i, j, v = line.split()
            W[int(i), int(j)] = float(v)
    return W
