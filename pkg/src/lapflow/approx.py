"""Low-rank cutoff and stretch approximations of the Laplacian pseudoinverse.

Operators expose uniform entry/column/apply access.  The approximate
variants are represented by their eigenpairs only and are never
materialized as an n x n matrix: entries cost O(#pairs), columns O(n * #pairs).
"""
from __future__ import annotations

import numpy as np

from .errors import (
    EmptyBasisError,
    IndexOutOfRangeError,
    InvalidOrderError,
    NonPositiveSigmaError,
    SigmaOutOfRangeError,
)
from .spectral import DensePinv, EigenBasis


class PinvOperator:
    """Common interface: entry(i, j), columns(idx), apply(b)."""

    n: int

    def entry(self, i: int, j: int) -> float:
        return float(self.columns(np.array([j]))[i, 0])

    def columns(self, idx: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def apply(self, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _check_index(self, i, j):
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexOutOfRangeError(f"entry ({i}, {j}) outside [0, {self.n})^2")


class ExactPinv(PinvOperator):
    """Wrapper over the dense G+."""

    def __init__(self, dense: DensePinv):
        self.dense = dense
        self.n = dense.M.shape[0]

    def entry(self, i: int, j: int) -> float:
        self._check_index(i, j)
        return float(self.dense.M[i, j])

    def columns(self, idx: np.ndarray) -> np.ndarray:
        return self.dense.M[:, np.asarray(idx, dtype=np.int64)]

    def apply(self, b: np.ndarray) -> np.ndarray:
        return self.dense.M @ np.asarray(b, dtype=np.float64)


class CutoffPinv(PinvOperator):
    """Spectral sum truncated to the pairs held by the basis."""

    def __init__(self, basis: EigenBasis):
        if basis.npairs == 0:
            raise EmptyBasisError("cutoff approximation needs at least one eigenpair")
        self.basis = basis
        self.n = basis.n
        self._scaled = basis.vectors / basis.values  # V diag(1/lambda)

    def entry(self, i: int, j: int) -> float:
        self._check_index(i, j)
        return float(self._scaled[i] @ self.basis.vectors[j])

    def columns(self, idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        return self._scaled @ self.basis.vectors[idx].T

    def apply(self, b: np.ndarray) -> np.ndarray:
        return self._scaled @ (self.basis.vectors.T @ np.asarray(b, dtype=np.float64))


class StretchPinv(PinvOperator):
    """Cutoff plus a rank-complement term with surrogate eigenvalue sigma.

    entry(i, j) = [i = j]/sigma - 1/(sigma n)
                  + sum_p (1/lambda_p - 1/sigma) v_p[i] v_p[j]
    """

    def __init__(self, basis: EigenBasis, sigma: float):
        if basis.npairs == 0:
            raise EmptyBasisError("stretch approximation needs at least one eigenpair")
        if sigma <= 0:
            raise NonPositiveSigmaError(f"sigma must be positive, got {sigma}")
        self.basis = basis
        self.sigma = float(sigma)
        self.n = basis.n
        self._scaled = basis.vectors * (1.0 / basis.values - 1.0 / sigma)

    def entry(self, i: int, j: int) -> float:
        self._check_index(i, j)
        val = self._scaled[i] @ self.basis.vectors[j]
        if i == j:
            val += 1.0 / self.sigma
        return float(val - 1.0 / (self.sigma * self.n))

    def columns(self, idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        out = self._scaled @ self.basis.vectors[idx].T
        out -= 1.0 / (self.sigma * self.n)
        out[idx, np.arange(len(idx))] += 1.0 / self.sigma
        return out

    def apply(self, b: np.ndarray) -> np.ndarray:
        b = np.asarray(b, dtype=np.float64)
        out = self._scaled @ (self.basis.vectors.T @ b)
        out += b / self.sigma
        out -= b.sum() / (self.sigma * self.n)
        return out


def build_cutoff(basis: EigenBasis) -> CutoffPinv:
    return CutoffPinv(basis)


def build_stretch(basis: EigenBasis, sigma: float) -> StretchPinv:
    return StretchPinv(basis, sigma)


def optimal_sigma(lambda_k1: float, lambda_n: float) -> float:
    """Harmonic mean of the first excluded and the largest eigenvalue."""
    if not 0 < lambda_k1 <= lambda_n:
        raise InvalidOrderError(f"need 0 < lambda_k1 <= lambda_n, got ({lambda_k1}, {lambda_n})")
    return 2.0 / (1.0 / lambda_k1 + 1.0 / lambda_n)


def approx_sigma(lambda_k: float) -> float:
    """Shortcut 2 * lambda_k, avoiding the two extra eigenvalue solves."""
    if lambda_k <= 0:
        raise InvalidOrderError(f"lambda_k must be positive, got {lambda_k}")
    return 2.0 * lambda_k


def error_bounds(lambda_2: float, lambda_k1: float, lambda_n: float, sigma: float):
    """Relative 2-norm error formulas for the two truncations.

    Returns (cutoff_rel, stretch_rel_bound, gamma) where
    cutoff_rel = lambda_2 / lambda_k1, gamma = 1/lambda_k1 - 1/lambda_n and
    stretch_rel_bound = lambda_2 * max(1/lambda_k1 - 1/sigma, 1/sigma - 1/lambda_n);
    the latter reduces to lambda_2 * gamma / 2 at the optimal sigma.
    """
    if not 0 < lambda_2 <= lambda_k1 <= lambda_n:
        raise InvalidOrderError(
            f"need 0 < lambda_2 <= lambda_k1 <= lambda_n, got ({lambda_2}, {lambda_k1}, {lambda_n})")
    if not lambda_k1 <= sigma <= lambda_n:
        raise SigmaOutOfRangeError(
            f"sigma = {sigma} outside [lambda_k1, lambda_n] = [{lambda_k1}, {lambda_n}]")
    cutoff_rel = lambda_2 / lambda_k1
    gamma = 1.0 / lambda_k1 - 1.0 / lambda_n
    stretch_rel_bound = lambda_2 * max(1.0 / lambda_k1 - 1.0 / sigma,
                                       1.0 / sigma - 1.0 / lambda_n)
    return cutoff_rel, stretch_rel_bound, gamma
