"""Eigenpair extraction and the dense pseudoinverse oracle."""
import numpy as np
import pytest

import lapflow as lf
from lapflow.errors import (
    KTooLargeError,
    NotConnectedError,
    SizeCapExceededError,
    SupplyNotBalancedError,
)
from lapflow.graph import dense_laplacian
from lapflow.spectral import dense_eigenbasis

from conftest import random_graph

P3_PINV = np.array([[5.0, -1.0, -4.0],
                    [-1.0, 2.0, -1.0],
                    [-4.0, -1.0, 5.0]]) / 9.0


def aligned(v, ref):
    """True if v equals ref up to sign."""
    return np.allclose(v, ref) or np.allclose(v, -ref)


class TestSmallestEigenpairs:
    def test_p3_both_pairs(self, p3):
        basis = lf.smallest_eigenpairs(p3, 2)
        assert np.allclose(basis.values, [1.0, 3.0], atol=1e-7)
        assert aligned(basis.vectors[:, 0], np.array([1.0, 0.0, -1.0]) / np.sqrt(2))
        assert aligned(basis.vectors[:, 1], np.array([1.0, -2.0, 1.0]) / np.sqrt(6))

    def test_k3_repeated_eigenvalue(self, k3):
        basis = lf.smallest_eigenpairs(k3, 2)
        assert np.allclose(basis.values, [3.0, 3.0], atol=1e-7)
        # repeated eigenvalue: compare the spectral projector, not vectors
        proj = basis.vectors @ basis.vectors.T
        assert np.allclose(proj, np.eye(3) - np.ones((3, 3)) / 3, atol=1e-7)

    def test_p2(self, p2):
        basis = lf.smallest_eigenpairs(p2, 1)
        assert basis.values[0] == pytest.approx(2.0, abs=1e-8)
        assert aligned(basis.vectors[:, 0], np.array([1.0, -1.0]) / np.sqrt(2))

    def test_residuals_within_tol(self):
        g = random_graph(5)
        basis = lf.smallest_eigenpairs(g, 4, tol=1e-8)
        for j in range(basis.npairs):
            v = basis.vectors[:, j]
            res = np.linalg.norm(g.laplacian_apply(v) - basis.values[j] * v)
            assert res <= 1e-8 * max(1.0, basis.values[j])

    def test_orthonormal_and_orthogonal_to_e(self):
        g = random_graph(7)
        basis = lf.smallest_eigenpairs(g, 5)
        gram = basis.vectors.T @ basis.vectors
        assert np.allclose(gram, np.eye(5), atol=1e-8)
        assert np.allclose(basis.vectors.sum(axis=0), 0.0, atol=1e-7)

    @pytest.mark.parametrize("seed", range(4))
    def test_full_spectrum_matches_dense(self, seed):
        g = random_graph(seed, max_n=30)
        basis = lf.smallest_eigenpairs(g, g.n - 1, seed=seed)
        oracle = dense_eigenbasis(g)
        assert np.allclose(basis.values, oracle.values, rtol=1e-6, atol=1e-8)

    def test_deterministic_given_seed(self, p3):
        a = lf.smallest_eigenpairs(p3, 2, seed=11)
        b = lf.smallest_eigenpairs(p3, 2, seed=11)
        assert np.array_equal(a.values, b.values)
        assert np.array_equal(a.vectors, b.vectors)

    def test_relabeling_invariance(self):
        g = random_graph(2, max_n=25)
        perm = np.random.default_rng(0).permutation(g.n)
        h = g.subgraph(perm)
        a = lf.smallest_eigenpairs(g, 3)
        b = lf.smallest_eigenpairs(h, 3)
        assert np.allclose(a.values, b.values, atol=1e-7)

    def test_k_too_large(self, p3):
        with pytest.raises(KTooLargeError):
            lf.smallest_eigenpairs(p3, 3)

    def test_not_connected(self):
        g = lf.from_edge_list([("a", "b"), ("c", "d")])
        with pytest.raises(NotConnectedError):
            lf.smallest_eigenpairs(g, 1)


class TestLargestEigenvalue:
    def test_k3(self, k3):
        assert lf.largest_eigenvalue(k3) == pytest.approx(3.0, abs=1e-7)

    def test_p2(self, p2):
        assert lf.largest_eigenvalue(p2) == pytest.approx(2.0, abs=1e-7)

    def test_p3(self, p3):
        assert lf.largest_eigenvalue(p3) == pytest.approx(3.0, abs=1e-7)

    @pytest.mark.parametrize("seed", range(3))
    def test_matches_dense(self, seed):
        g = random_graph(seed, max_n=30)
        dense = np.linalg.eigvalsh(dense_laplacian(g)).max()
        assert lf.largest_eigenvalue(g) == pytest.approx(dense, rel=1e-6)


class TestExactPinv:
    def test_p2(self, p2):
        m = lf.exact_pinv(p2).M
        assert np.allclose(m, [[0.25, -0.25], [-0.25, 0.25]], atol=1e-12)

    def test_k3(self, k3):
        m = lf.exact_pinv(k3).M
        expect = np.full((3, 3), -1.0 / 9.0) + np.eye(3) / 3.0  # 2/9 diag, -1/9 off
        assert np.allclose(m, expect, atol=1e-12)

    def test_p3(self, p3):
        assert np.allclose(lf.exact_pinv(p3).M, P3_PINV, atol=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_spectral_sum(self, seed):
        g = random_graph(seed)
        basis = dense_eigenbasis(g)
        spectral = (basis.vectors / basis.values) @ basis.vectors.T
        assert np.allclose(lf.exact_pinv(g).M, spectral, atol=1e-8)

    @pytest.mark.parametrize("seed", range(5))
    def test_product_identity(self, seed):
        g = random_graph(seed)
        m = lf.exact_pinv(g).M
        lhs = dense_laplacian(g) @ m
        assert np.allclose(lhs, np.eye(g.n) - 1.0 / g.n, atol=1e-8)

    def test_symmetric_and_null_e(self):
        g = random_graph(4)
        m = lf.exact_pinv(g).M
        assert np.allclose(m, m.T)
        assert np.allclose(m @ np.ones(g.n), 0.0, atol=1e-9)

    def test_size_cap(self, p3):
        with pytest.raises(SizeCapExceededError):
            lf.exact_pinv(p3, dense_cap=2)

    def test_not_connected(self):
        g = lf.from_edge_list([("a", "b"), ("c", "d")])
        with pytest.raises(NotConnectedError):
            lf.exact_pinv(g)


class TestSolveMinNorm:
    def test_p3_unit_pair(self, p3):
        pinv = lf.ExactPinv(lf.exact_pinv(p3))
        b = np.array([1.0, 0.0, -1.0])
        assert np.allclose(lf.solve_min_norm(p3, b, pinv), [1.0, 0.0, -1.0])

    def test_zero_rhs(self, p3):
        pinv = lf.ExactPinv(lf.exact_pinv(p3))
        assert np.allclose(lf.solve_min_norm(p3, np.zeros(3), pinv), 0.0)

    def test_p2(self, p2):
        pinv = lf.ExactPinv(lf.exact_pinv(p2))
        out = lf.solve_min_norm(p2, np.array([1.0, -1.0]), pinv)
        assert np.allclose(out, [0.5, -0.5])

    def test_unbalanced_rejected(self, p3):
        pinv = lf.ExactPinv(lf.exact_pinv(p3))
        with pytest.raises(SupplyNotBalancedError):
            lf.solve_min_norm(p3, np.array([1.0, 0.0, 0.0]), pinv)

    def test_result_orthogonal_to_e(self):
        g = random_graph(6)
        pinv = lf.ExactPinv(lf.exact_pinv(g))
        rng = np.random.default_rng(1)
        b = rng.standard_normal(g.n)
        b -= b.mean()
        assert abs(lf.solve_min_norm(g, b, pinv).sum()) < 1e-8


class TestEigenBasisSerialization:
    def test_json_round_trip(self, p3):
        basis = lf.smallest_eigenpairs(p3, 2)
        back = lf.EigenBasis.from_json(basis.to_json())
        assert back.n == basis.n
        assert np.array_equal(back.values, basis.values)
        assert np.array_equal(back.vectors, basis.vectors)
        assert back.residual_tol == basis.residual_tol

    def test_truncate(self, p3):
        basis = lf.smallest_eigenpairs(p3, 2)
        one = basis.truncate(1)
        assert one.npairs == 1
        assert one.values[0] == basis.values[0]
        with pytest.raises(KTooLargeError):
            basis.truncate(3)
