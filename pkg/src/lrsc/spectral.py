"""Spectral clustering of representation matrices and accuracy scoring."""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh
from scipy.optimize import linear_sum_assignment
from sklearn.cluster import KMeans

from .validation import check_square


@dataclass
class ClusteringResult:
    """Integer labels in [0, k) plus optional scoring against ground truth."""

    labels: np.ndarray
    k: int
    accuracy: float = None
    assignment: dict = None
    degenerate: bool = False


def affinity_from_c(C):
    """Symmetric nonnegative affinity |C| + |C|^T with zero diagonal."""
    C = check_square(C, "C")
    W = np.abs(C) + np.abs(C).T
    np.fill_diagonal(W, 0.0)
    return W


def spectral_cluster(W, k, seed=0, n_init=20, max_iter=300):
    """Normalized-cut spectral clustering with a row-normalized embedding.

    Builds L_sym = I - D^{-1/2} W D^{-1/2} (isolated vertices keep zero
    degree weight), embeds into the k eigenvectors of smallest eigenvalue,
    row-normalizes, and runs seeded k-means keeping the best of ``n_init``
    restarts.
    """
    W = check_square(W, "W")
    n = W.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= n={n}, got {k}")
    if k == 1:
        return ClusteringResult(labels=np.zeros(n, dtype=int), k=1)
    deg = W.sum(axis=1)
    degenerate = not np.any(deg > 0)
    with np.errstate(divide="ignore"):
        dinv = np.where(deg > 0, 1.0 / np.sqrt(deg), 0.0)
    lsym = np.eye(n) - dinv[:, None] * W * dinv[None, :]
    lsym = (lsym + lsym.T) / 2.0
    _, vecs = eigh(lsym, subset_by_index=(0, k - 1))
    norms = np.linalg.norm(vecs, axis=1, keepdims=True)
    embedding = np.where(norms > 0, vecs / np.where(norms > 0, norms, 1.0), 0.0)
    km = KMeans(n_clusters=k, n_init=n_init, max_iter=max_iter, random_state=seed)
    labels = km.fit_predict(embedding)
    return ClusteringResult(labels=labels.astype(int), k=k, degenerate=degenerate)


def best_label_assignment(labels, truth):
    """Optimal one-to-one matching between predicted and true labels.

    Returns (matched_count, mapping) where mapping sends a predicted label
    to the true label it is matched with.
    """
    labels = np.asarray(labels).ravel()
    truth = np.asarray(truth).ravel()
    if labels.shape != truth.shape:
        raise ValueError(f"label vectors differ in length: {labels.size} vs {truth.size}")
    pred_ids = np.unique(labels)
    true_ids = np.unique(truth)
    contingency = np.zeros((pred_ids.size, true_ids.size), dtype=int)
    for i, p in enumerate(pred_ids):
        for j, t in enumerate(true_ids):
            contingency[i, j] = np.count_nonzero((labels == p) & (truth == t))
    rows, cols = linear_sum_assignment(-contingency)
    matched = int(contingency[rows, cols].sum())
    mapping = {int(pred_ids[r]): int(true_ids[c]) for r, c in zip(rows, cols)}
    return matched, mapping


def clustering_accuracy(labels, truth):
    """Percentage of samples matched under the best label permutation."""
    labels = np.asarray(labels).ravel()
    matched, _ = best_label_assignment(labels, truth)
    return 100.0 * matched / labels.size


def score(result, truth):
    """Fill in accuracy and assignment of a ClusteringResult in place."""
    matched, mapping = best_label_assignment(result.labels, truth)
    result.accuracy = 100.0 * matched / result.labels.size
    result.assignment = mapping
    return result
