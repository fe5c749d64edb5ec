"""Eigenpair extraction for the Laplacian and the dense pseudoinverse oracle.

The few smallest nontrivial eigenpairs are computed with a Lanczos
iteration applied to G directly, with explicit deflation of the known
null vector e/sqrt(n) and of previously converged eigenvectors.  No
sparse factorization is involved, so the solver stays matrix-free.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConvergenceFailureError,
    KTooLargeError,
    NotConnectedError,
    SingularShiftedMatrixError,
    SizeCapExceededError,
    SupplyNotBalancedError,
)
from .graph import Graph, dense_laplacian

DEFAULT_TOL = 1e-8
DENSE_CAP = 5000
MAX_BASIS = 80


@dataclass(frozen=True)
class EigenBasis:
    """Ordered nontrivial eigenpairs (lambda_2 <= ... ascending) of G.

    ``values[j]`` and ``vectors[:, j]`` form one pair; the null pair
    (0, e/sqrt(n)) is excluded by construction.  ``iterations`` counts the
    matrix-vector products spent by the solver (0 for dense extraction).
    """

    n: int
    values: np.ndarray
    vectors: np.ndarray
    residual_tol: float
    iterations: int = 0

    @property
    def npairs(self) -> int:
        return len(self.values)

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "npairs": self.npairs,
            "residual_tol": self.residual_tol,
            "iterations": self.iterations,
            "values": [float(v) for v in self.values],
            "vectors": [[float(x) for x in self.vectors[:, j]] for j in range(self.npairs)],
        })

    @classmethod
    def from_json(cls, text: str) -> "EigenBasis":
        d = json.loads(text)
        vectors = np.array(d["vectors"], dtype=np.float64).T.reshape(d["n"], d["npairs"])
        return cls(n=d["n"], values=np.array(d["values"], dtype=np.float64),
                   vectors=vectors, residual_tol=d["residual_tol"],
                   iterations=d.get("iterations", 0))

    def truncate(self, npairs: int) -> "EigenBasis":
        if not 1 <= npairs <= self.npairs:
            raise KTooLargeError(f"cannot take {npairs} pairs from a basis of {self.npairs}")
        return EigenBasis(n=self.n, values=self.values[:npairs],
                          vectors=self.vectors[:, :npairs],
                          residual_tol=self.residual_tol, iterations=self.iterations)


@dataclass(frozen=True)
class DensePinv:
    """Dense Moore-Penrose inverse of the Laplacian; symmetric, Me = 0."""

    M: np.ndarray


class _LanczosRun:
    """One deflated Lanczos sweep targeting an extremal eigenvalue of G."""

    def __init__(self, g: Graph, deflate: np.ndarray, rng: np.random.Generator,
                 largest: bool, tol: float, max_matvecs: int):
        self.g = g
        self.deflate = deflate
        self.rng = rng
        self.largest = largest
        self.tol = tol
        self.max_matvecs = max_matvecs
        self.matvecs = 0

    def _project(self, v: np.ndarray) -> np.ndarray:
        return v - self.deflate @ (self.deflate.T @ v)

    def _start_vector(self, n: int) -> np.ndarray:
        for _ in range(50):
            v = self._project(self.rng.standard_normal(n))
            norm = np.linalg.norm(v)
            if norm > 1e-8:
                return v / norm
        raise ConvergenceFailureError("could not draw a start vector outside the deflated space")

    def run(self):
        n = self.g.n
        start = self._start_vector(n)
        while True:
            theta, y, converged = self._sweep(start)
            if converged:
                return theta, y
            if self.matvecs >= self.max_matvecs:
                res = np.linalg.norm(self.g.laplacian_apply(y) - theta * y)
                raise ConvergenceFailureError(
                    f"Lanczos did not converge after {self.matvecs} matrix-vector products",
                    iterations=self.matvecs, worst_residual=res)
            start = y  # thick restart from the best Ritz vector

    def _sweep(self, q0: np.ndarray):
        n = self.g.n
        max_basis = min(MAX_BASIS, n)
        Q = np.empty((n, max_basis))
        alphas = np.empty(max_basis)
        betas = np.empty(max_basis)
        Q[:, 0] = q0 / np.linalg.norm(q0)
        theta, y = 0.0, Q[:, 0]
        for j in range(max_basis):
            self.matvecs += 1
            r = self.g.laplacian_apply(Q[:, j])
            alphas[j] = Q[:, j] @ r
            # full reorthogonalization against the Krylov basis and the
            # deflated space, twice for numerical safety
            for _ in range(2):
                r -= Q[:, :j + 1] @ (Q[:, :j + 1].T @ r)
                r = self._project(r)
            beta = np.linalg.norm(r)
            theta, z, cheap = self._best_ritz(alphas, betas, j + 1, beta)
            scale = max(1.0, abs(theta))
            exhausted = beta <= 1e-13 * scale
            if cheap <= self.tol * scale or exhausted:
                y = self._ritz_vector(Q, z, j + 1)
                resid = np.linalg.norm(self.g.laplacian_apply(y) - theta * y)
                if resid <= self.tol * scale:
                    return theta, y, True
                if exhausted:
                    # Krylov space is an invariant subspace but the pair
                    # still misses the tolerance; restart from y
                    return theta, y, False
            if j + 1 == max_basis or self.matvecs >= self.max_matvecs or exhausted:
                y = self._ritz_vector(Q, z, j + 1)
                return theta, y, False
            betas[j] = beta
            Q[:, j + 1] = r / beta
        return theta, y, False

    def _best_ritz(self, alphas, betas, j, beta):
        T = np.diag(alphas[:j])
        if j > 1:
            T += np.diag(betas[:j - 1], 1) + np.diag(betas[:j - 1], -1)
        evals, evecs = np.linalg.eigh(T)
        idx = -1 if self.largest else 0
        # standard Lanczos residual bound |beta_j| |e_j^T z|
        return evals[idx], evecs[:, idx], abs(beta * evecs[j - 1, idx])

    def _ritz_vector(self, Q, z, j):
        y = self._project(Q[:, :j] @ z)
        norm = np.linalg.norm(y)
        if norm < 1e-12:
            return Q[:, 0]
        return y / norm


def smallest_eigenpairs(g: Graph, npairs: int, tol: float = DEFAULT_TOL,
                        seed: int = 0) -> EigenBasis:
    """The ``npairs`` smallest nontrivial eigenpairs (lambda_2, ...) of G.

    The null pair is deflated analytically, never computed.  Pairs are
    extracted one at a time, each converged vector joining the deflation
    set, so values come out ascending.  Deterministic for a given seed.
    """
    if not g.is_connected():
        raise NotConnectedError("eigenpair extraction requires a connected graph")
    if not 1 <= npairs <= g.n - 1:
        raise KTooLargeError(f"npairs must be in [1, n-1] = [1, {g.n - 1}], got {npairs}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    rng = np.random.default_rng(seed)
    n = g.n
    deflate = np.ones((n, 1)) / np.sqrt(n)
    values = []
    max_matvecs = 100 * n
    matvecs = 0
    for _ in range(npairs):
        run = _LanczosRun(g, deflate, rng, largest=False, tol=tol,
                          max_matvecs=max_matvecs - matvecs)
        theta, y = run.run()
        matvecs += run.matvecs
        values.append(max(theta, 0.0))
        deflate = np.hstack([deflate, y[:, None]])
    vectors = deflate[:, 1:]
    order = np.argsort(values, kind="stable")
    return EigenBasis(n=n, values=np.array(values)[order], vectors=vectors[:, order],
                      residual_tol=tol, iterations=matvecs)


def largest_eigenvalue(g: Graph, tol: float = DEFAULT_TOL, seed: int = 0) -> float:
    """lambda_n of G within relative tolerance ``tol``."""
    if not g.is_connected():
        raise NotConnectedError("largest_eigenvalue requires a connected graph")
    rng = np.random.default_rng(seed)
    run = _LanczosRun(g, np.zeros((g.n, 0)), rng, largest=True, tol=tol,
                      max_matvecs=100 * g.n)
    theta, _ = run.run()
    return float(theta)


def exact_pinv(g: Graph, dense_cap: int = DENSE_CAP) -> DensePinv:
    """Dense G+ via the shifted-inverse identity (G + J/n)^{-1} - J/n."""
    if not g.is_connected():
        raise NotConnectedError("exact_pinv requires a connected graph")
    if g.n > dense_cap:
        raise SizeCapExceededError(f"n = {g.n} exceeds dense cap {dense_cap}")
    n = g.n
    shifted = dense_laplacian(g) + 1.0 / n
    try:
        inv = np.linalg.inv(shifted)
    except np.linalg.LinAlgError as exc:
        raise SingularShiftedMatrixError(str(exc)) from exc
    m = inv - 1.0 / n
    return DensePinv(M=0.5 * (m + m.T))


def dense_eigenbasis(g: Graph, dense_cap: int = DENSE_CAP) -> EigenBasis:
    """All n-1 nontrivial eigenpairs from a dense eigendecomposition.

    Oracle counterpart of :func:`smallest_eigenpairs` for small graphs.
    """
    if not g.is_connected():
        raise NotConnectedError("dense_eigenbasis requires a connected graph")
    if g.n > dense_cap:
        raise SizeCapExceededError(f"n = {g.n} exceeds dense cap {dense_cap}")
    evals, evecs = np.linalg.eigh(dense_laplacian(g))
    return EigenBasis(n=g.n, values=evals[1:], vectors=evecs[:, 1:],
                      residual_tol=1e-12, iterations=0)


def solve_min_norm(g: Graph, b: np.ndarray, pinv) -> np.ndarray:
    """Minimum-norm solution of G v = b through a pseudoinverse operator.

    ``pinv`` is any object with an ``apply(b)`` method (exact or
    approximate).  ``b`` must sum to zero, i.e. lie in the range of G.
    """
    b = np.asarray(b, dtype=np.float64)
    if abs(b.sum()) > 1e-9 * max(1.0, np.abs(b).max(initial=0.0)):
        raise SupplyNotBalancedError("right-hand side must sum to zero")
    return pinv.apply(b)
