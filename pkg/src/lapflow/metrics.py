"""Effectiveness metrics: error norms, ranking comparison, eigenvalue profile."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .approx import ExactPinv, PinvOperator
from .errors import ConstantVectorError, LengthMismatchError, SizeCapExceededError
from .graph import Graph, dense_laplacian
from .spectral import DENSE_CAP, exact_pinv

LOG_EPS = 1e-12
SKEW_THRESHOLD = 1.0
POWER_TOL = 1e-12
POWER_MAXIT = 10000


@dataclass(frozen=True)
class RankingReport:
    pearson: float
    spearman: float
    transformed: bool
    mean_rank_change: float
    top_k_overlap: int
    per_node: tuple  # (label, exact_rank, approx_rank)


@dataclass(frozen=True)
class EigenDegreeProfile:
    pearson: float | None
    rel_distance: float


def dense_ranks(scores: np.ndarray, labels=None) -> np.ndarray:
    """Rank 1 = highest score; ties broken by ascending label."""
    scores = np.asarray(scores, dtype=np.float64)
    if labels is None:
        labels = [str(i) for i in range(len(scores))]
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], labels[i]))
    ranks = np.empty(len(scores), dtype=np.int64)
    ranks[order] = np.arange(1, len(scores) + 1)
    return ranks


def compare_rankings(exact: np.ndarray, approx: np.ndarray, top_k: int = 10,
                     labels=None) -> RankingReport:
    """Pearson (log-transformed when raw scores are skewed), Spearman,
    mean rank change and top-k overlap between two score vectors.

    The log transform log(score + 1e-12) is applied iff the sample
    skewness of both raw vectors exceeds 1.0 (a symmetric normality
    proxy: near-normal scores are never transformed).
    """
    exact = np.asarray(exact, dtype=np.float64)
    approx = np.asarray(approx, dtype=np.float64)
    if exact.shape != approx.shape or exact.ndim != 1 or len(exact) < 2:
        raise LengthMismatchError(f"score vectors must be equal-length 1-d, length >= 2")
    if np.ptp(exact) == 0 or np.ptp(approx) == 0:
        raise ConstantVectorError("correlation undefined on a constant score vector")
    transformed = bool(min(abs_skew(exact), abs_skew(approx)) > SKEW_THRESHOLD)
    a, b = (np.log(exact + LOG_EPS), np.log(approx + LOG_EPS)) if transformed else (exact, approx)
    pearson = float(np.corrcoef(a, b)[0, 1])
    spearman = float(stats.spearmanr(exact, approx).statistic)
    if labels is None:
        labels = [str(i) for i in range(len(exact))]
    r_exact = dense_ranks(exact, labels)
    r_approx = dense_ranks(approx, labels)
    mean_rank_change = float(np.mean(np.abs(r_exact - r_approx)))
    top_exact = {labels[i] for i in np.flatnonzero(r_exact <= top_k)}
    top_approx = {labels[i] for i in np.flatnonzero(r_approx <= top_k)}
    per_node = tuple((labels[i], int(r_exact[i]), int(r_approx[i])) for i in range(len(exact)))
    return RankingReport(pearson=pearson, spearman=spearman, transformed=transformed,
                         mean_rank_change=mean_rank_change,
                         top_k_overlap=len(top_exact & top_approx), per_node=per_node)


def abs_skew(x: np.ndarray) -> float:
    """Magnitude of sample skewness; the normality proxy for the log transform."""
    return abs(float(stats.skew(x)))


def spectral_norm(M: np.ndarray, tol: float = POWER_TOL, maxit: int = POWER_MAXIT) -> float:
    """2-norm of a square matrix by power iteration on M M^T."""
    n = M.shape[0]
    # a deterministic but generic start: a symmetric start vector can share a
    # symmetry with M and then never overlap the dominant singular direction
    v = np.random.default_rng(12345).standard_normal(n)
    v /= np.linalg.norm(v)
    est = 0.0
    for _ in range(maxit):
        w = M @ (M.T @ v)
        norm = np.linalg.norm(w)
        if norm == 0:
            return 0.0
        new_est = np.sqrt(norm)
        v = w / norm
        if abs(new_est - est) <= tol * max(new_est, 1e-300):
            return float(new_est)
        est = new_est
    return float(est)


def rel_2norm_error(g: Graph, approx_op: PinvOperator, dense_cap: int = DENSE_CAP,
                    exact: ExactPinv | None = None) -> float:
    """||G+ - approx||_2 / ||G+||_2 against the dense exact pseudoinverse."""
    if g.n > dense_cap:
        raise SizeCapExceededError(f"n = {g.n} exceeds dense cap {dense_cap}")
    if exact is None:
        exact = ExactPinv(exact_pinv(g, dense_cap=dense_cap))
    all_nodes = np.arange(g.n)
    diff = exact.columns(all_nodes) - approx_op.columns(all_nodes)
    return spectral_norm(diff) / spectral_norm(exact.columns(all_nodes))


def eigen_degree_profile(g: Graph, dense_cap: int = DENSE_CAP) -> EigenDegreeProfile:
    """Correlation and relative distance of sorted eigenvalues vs sorted degrees.

    The null eigenvalue is excluded, so the n-1 nontrivial eigenvalues are
    matched against the n-1 largest degrees, both sorted ascending.
    """
    if g.n > dense_cap:
        raise SizeCapExceededError(f"n = {g.n} exceeds dense cap {dense_cap}")
    evals = np.sort(np.linalg.eigvalsh(dense_laplacian(g)))[1:]
    degs = np.sort(g.degrees)[1:]
    rel = float(np.linalg.norm(evals - degs) / np.linalg.norm(evals))
    if np.ptp(evals) == 0 or np.ptp(degs) == 0:
        return EigenDegreeProfile(pearson=None, rel_distance=rel)
    return EigenDegreeProfile(pearson=float(np.corrcoef(evals, degs)[0, 1]), rel_distance=rel)
