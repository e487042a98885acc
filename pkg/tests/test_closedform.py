import numpy as np
import pytest

from lrsc.closedform import Decomposition, numerical_rank, solve_p1, solve_p2, solve_p3, solve_p4
from lrsc.operators import TAU_INF

from oracles import (
    alternating_p3,
    p1_objective,
    p3_objective,
    p4_objective,
    p4_rank_enumeration,
    prox_gradient_p1,
)


def random_low_rank(rng, p, n, r, scale=1.0):
    return scale * (rng.standard_normal((p, r)) @ rng.standard_normal((r, n)))


def assert_valid_representation(C):
    np.testing.assert_allclose(C, C.T, atol=1e-10)
    w = np.linalg.eigvalsh((C + C.T) / 2.0)
    assert w.min() > -1e-10
    assert w.max() < 1.0 + 1e-10


class TestP1:
    def test_rank_one_example(self):
        # A = 2 * e1 e1^T has one singular value 2; p_tau(2) = 1 - 1/(tau*4)
        A = np.zeros((3, 3))
        A[0, 0] = 2.0
        C = solve_p1(A, 1.0)
        expected = np.zeros((3, 3))
        expected[0, 0] = 0.75
        np.testing.assert_allclose(C, expected, atol=1e-12)

    def test_zero_matrix(self):
        np.testing.assert_array_equal(solve_p1(np.zeros((4, 5)), 2.0), np.zeros((5, 5)))

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_prox_gradient_oracle(self, seed):
        rng = np.random.default_rng(seed)
        A = random_low_rank(rng, 12, 9, 4, scale=2.0)
        tau = rng.uniform(0.5, 3.0)
        C = solve_p1(A, tau)
        C_pg = prox_gradient_p1(A, tau, np.zeros((9, 9)), iters=3000)
        assert p1_objective(A, C, tau) <= p1_objective(A, C_pg, tau) + 1e-6
        np.testing.assert_allclose(C, C_pg, atol=1e-4)

    def test_valid_representation(self):
        rng = np.random.default_rng(0)
        C = solve_p1(rng.standard_normal((8, 6)), 1.3)
        assert_valid_representation(C)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            solve_p1(np.ones((2, 2)), 0.0)
        with pytest.raises(ValueError):
            solve_p1(np.array([1.0, 2.0]), 1.0)
        with pytest.raises(ValueError):
            solve_p1(np.array([[np.nan, 1.0], [0.0, 1.0]]), 1.0)


class TestP2:
    def test_projection_onto_row_space(self):
        rng = np.random.default_rng(1)
        A = random_low_rank(rng, 10, 8, 3)
        C = solve_p2(A)
        # C is an orthogonal projection with A C = A
        np.testing.assert_allclose(C @ C, C, atol=1e-10)
        np.testing.assert_allclose(A @ C, A, atol=1e-10)
        assert np.trace(C) == pytest.approx(3.0, abs=1e-8)

    def test_zero_matrix(self):
        np.testing.assert_array_equal(solve_p2(np.zeros((3, 4))), np.zeros((4, 4)))

    def test_full_rank_gives_identity(self):
        rng = np.random.default_rng(2)
        C = solve_p2(rng.standard_normal((6, 4)))
        np.testing.assert_allclose(C, np.eye(4), atol=1e-10)

    def test_limit_of_p1(self):
        rng = np.random.default_rng(3)
        A = random_low_rank(rng, 10, 8, 3)
        np.testing.assert_allclose(solve_p1(A, 1e9), solve_p2(A), atol=1e-6)


class TestNumericalRank:
    def test_basic(self):
        assert numerical_rank(np.array([3.0, 1.0, 1e-18]), (5, 5)) == 2
        assert numerical_rank(np.array([0.0]), (3, 3)) == 0
        assert numerical_rank(np.array([]), (0, 3)) == 0


class TestP3:
    def test_returns_decomposition(self):
        out = solve_p3(np.eye(3), 1.0, 1.0)
        assert isinstance(out, Decomposition)
        assert out.iterations == 0 and out.converged
        np.testing.assert_array_equal(out.E, np.zeros((3, 3)))

    def test_small_data_linearly_shrunk(self):
        # singular values 0.1 sit below sigma_star(1, 1): the lower branch
        # shrinks them to alpha/(alpha+tau)*0.1 = 0.05, below the p_tau
        # knee, so the representation vanishes
        out = solve_p3(0.1 * np.eye(3), 1.0, 1.0)
        np.testing.assert_allclose(out.A, 0.05 * np.eye(3), atol=1e-12)
        np.testing.assert_allclose(out.C, 0.0, atol=1e-12)

    def test_c_equals_p1_of_a(self):
        # the representation is exactly the P1 solution for the cleaned A
        rng = np.random.default_rng(4)
        X = random_low_rank(rng, 10, 8, 3, scale=3.0) + 0.05 * rng.standard_normal((10, 8))
        out = solve_p3(X, 5.0, 1.0, mode="exact")
        np.testing.assert_allclose(out.C, solve_p1(out.A, 1.0), atol=1e-8)
        assert_valid_representation(out.C)

    @pytest.mark.parametrize("seed", range(3))
    def test_exact_mode_matches_alternating_oracle(self, seed):
        rng = np.random.default_rng(seed)
        X = random_low_rank(rng, 8, 6, 2, scale=3.0) + 0.1 * rng.standard_normal((8, 6))
        alpha, tau = 4.0, 1.0
        out = solve_p3(X, alpha, tau, mode="exact")
        A_alt, C_alt = alternating_p3(X, alpha, tau, iters=200)
        ours = p3_objective(X, out.A, out.C, alpha, tau)
        theirs = p3_objective(X, A_alt, C_alt, alpha, tau)
        assert ours <= theirs + 1e-4

    def test_paper_mode_gap_is_bounded(self):
        # the verbatim identity-branch rule is slightly suboptimal but close
        rng = np.random.default_rng(7)
        X = random_low_rank(rng, 8, 6, 2, scale=3.0) + 0.1 * rng.standard_normal((8, 6))
        alpha, tau = 4.0, 1.0
        paper = solve_p3(X, alpha, tau, mode="paper")
        exact = solve_p3(X, alpha, tau, mode="exact")
        gap = p3_objective(X, paper.A, paper.C, alpha, tau) - p3_objective(
            X, exact.A, exact.C, alpha, tau
        )
        assert 0.0 <= gap < 0.1

    def test_hard_threshold_via_infinite_tau(self):
        rng = np.random.default_rng(5)
        X = random_low_rank(rng, 9, 7, 3, scale=2.0)
        out_inf = solve_p3(X, 3.0, TAU_INF)
        out_p4 = solve_p4(X, 3.0)
        np.testing.assert_allclose(out_inf.A, out_p4.A, atol=1e-10)
        np.testing.assert_allclose(out_inf.C, out_p4.C, atol=1e-10)


class TestP4:
    def test_threshold_boundary(self):
        # alpha = 2 keeps singular values above 1
        X = np.diag([3.0, 1.5, 0.5])
        out = solve_p4(X, 2.0)
        np.testing.assert_allclose(np.diag(out.A), [3.0, 1.5, 0.0], atol=1e-12)
        np.testing.assert_allclose(out.C, np.diag([1.0, 1.0, 0.0]), atol=1e-12)

    def test_feasibility(self):
        rng = np.random.default_rng(6)
        X = random_low_rank(rng, 10, 8, 3, scale=2.0) + 0.05 * rng.standard_normal((10, 8))
        out = solve_p4(X, 5.0)
        np.testing.assert_allclose(out.A @ out.C, out.A, atol=1e-8)
        np.testing.assert_allclose(out.C @ out.C, out.C, atol=1e-10)

    @pytest.mark.parametrize("seed", range(5))
    def test_certified_global_optimum(self, seed):
        rng = np.random.default_rng(seed)
        X = random_low_rank(rng, 9, 7, 3, scale=1.5) + 0.1 * rng.standard_normal((9, 7))
        alpha = rng.uniform(1.0, 8.0)
        out = solve_p4(X, alpha)
        value = p4_objective(X, out.A, out.C, alpha)
        assert value == pytest.approx(p4_rank_enumeration(X, alpha), abs=1e-8)

    def test_limit_of_p3(self):
        rng = np.random.default_rng(8)
        X = random_low_rank(rng, 9, 7, 3, scale=2.0)
        big = solve_p3(X, 3.0, 1e9)
        hard = solve_p4(X, 3.0)
        np.testing.assert_allclose(big.A, hard.A, atol=1e-5)
        np.testing.assert_allclose(big.C, hard.C, atol=1e-5)
