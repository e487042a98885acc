import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lrsc.spectral import (
    ClusteringResult,
    affinity_from_c,
    best_label_assignment,
    clustering_accuracy,
    score,
    spectral_cluster,
)


class TestAffinity:
    def test_symmetrizes_and_zeroes_diagonal(self):
        C = np.array([[2.0, -1.0], [0.5, 3.0]])
        W = affinity_from_c(C)
        np.testing.assert_array_equal(W, [[0.0, 1.5], [1.5, 0.0]])

    def test_nonnegative(self):
        rng = np.random.default_rng(0)
        W = affinity_from_c(rng.standard_normal((7, 7)))
        assert np.all(W >= 0)
        np.testing.assert_array_equal(W, W.T)

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError):
            affinity_from_c(np.ones((2, 3)))


class TestSpectralCluster:
    def test_disconnected_cliques(self):
        # 5-clique plus 7-clique must be split exactly
        W = np.zeros((12, 12))
        W[:5, :5] = 1.0
        W[5:, 5:] = 1.0
        np.fill_diagonal(W, 0.0)
        result = spectral_cluster(W, 2, seed=0)
        truth = np.repeat([0, 1], [5, 7])
        assert clustering_accuracy(result.labels, truth) == 100.0
        assert not result.degenerate

    def test_k_equals_one(self):
        result = spectral_cluster(np.zeros((4, 4)), 1)
        np.testing.assert_array_equal(result.labels, np.zeros(4, dtype=int))

    def test_degenerate_flag(self):
        result = spectral_cluster(np.zeros((5, 5)), 2, seed=0)
        assert result.degenerate
        assert result.labels.size == 5

    def test_seed_stability(self):
        rng = np.random.default_rng(1)
        W = affinity_from_c(rng.standard_normal((10, 10)))
        a = spectral_cluster(W, 3, seed=7)
        b = spectral_cluster(W, 3, seed=7)
        np.testing.assert_array_equal(a.labels, b.labels)

    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            spectral_cluster(np.zeros((3, 3)), 4)
        with pytest.raises(ValueError):
            spectral_cluster(np.zeros((3, 3)), 0)


class TestAccuracy:
    def test_perfect_after_relabeling(self):
        truth = np.array([0, 0, 1, 1, 2, 2])
        pred = np.array([2, 2, 0, 0, 1, 1])
        assert clustering_accuracy(pred, truth) == 100.0

    def test_partial(self):
        truth = np.array([0, 0, 1, 1])
        pred = np.array([0, 1, 1, 1])
        assert clustering_accuracy(pred, truth) == 75.0

    def test_assignment_mapping(self):
        truth = np.array([5, 5, 9, 9])
        pred = np.array([1, 1, 0, 0])
        matched, mapping = best_label_assignment(pred, truth)
        assert matched == 4
        assert mapping == {1: 5, 0: 9}

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            clustering_accuracy(np.array([0, 1]), np.array([0, 1, 2]))

    @given(st.permutations(range(4)))
    @settings(max_examples=24, deadline=None)
    def test_invariant_under_label_permutation(self, perm):
        truth = np.array([0, 0, 1, 2, 3, 3, 1, 2])
        pred = np.array([0, 1, 1, 2, 3, 3, 1, 2])
        base = clustering_accuracy(pred, truth)
        relabeled = np.array([perm[p] for p in pred])
        assert clustering_accuracy(relabeled, truth) == base

    def test_dominates_raw_agreement(self):
        # the identity relabeling is one of the candidate matchings, so the
        # optimized accuracy can never fall below plain agreement
        rng = np.random.default_rng(2)
        truth = rng.integers(0, 3, size=60)
        pred = rng.integers(0, 3, size=60)
        raw = 100.0 * np.mean(pred == truth)
        assert clustering_accuracy(pred, truth) >= raw - 1e-9

    def test_score_fills_result(self):
        result = ClusteringResult(labels=np.array([1, 1, 0, 0]), k=2)
        score(result, np.array([0, 0, 1, 1]))
        assert result.accuracy == 100.0
        assert result.assignment == {1: 0, 0: 1}
