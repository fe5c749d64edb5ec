"""Scikit-learn style estimators wrapping the pseudoinverse and betweenness
pipelines, so they compose with the wider ecosystem (get_params/set_params,
clone, pipelines over precomputed graphs).

``k`` always counts eigenpairs actually used (the Fiedler pair is k = 1).
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from . import flow
from .approx import ExactPinv, approx_sigma, build_cutoff, build_stretch, optimal_sigma
from .errors import BadParamsError, NotConnectedError
from .graph import Graph
from .metrics import dense_ranks
from .spectral import DENSE_CAP, exact_pinv, largest_eigenvalue, smallest_eigenpairs

METHODS = ("exact", "cutoff", "stretch", "fiedler")
SIGMA_POLICIES = ("optimal", "2lambdak")


def check_graph(g, require_connected: bool = True, min_nodes: int = 2) -> Graph:
    """Validate a Graph input the way sklearn's check_array validates X."""
    if not isinstance(g, Graph):
        raise TypeError(f"expected a lapflow Graph, got {type(g).__name__}")
    if g.n < min_nodes:
        raise BadParamsError(f"graph must have at least {min_nodes} nodes, got {g.n}")
    if require_connected and not g.is_connected():
        raise NotConnectedError("graph must be connected")
    return g


def resolve_sigma(g: Graph, basis, sigma_policy, tol: float, seed: int) -> float:
    """sigma for the stretch operator under the configured policy.

    "optimal": harmonic mean of lambda_{k+1} and lambda_n (two extra
    eigenvalue solves, no extra vectors).  "2lambdak": twice the largest
    retained eigenvalue.  A number is taken as an explicit sigma.
    """
    if isinstance(sigma_policy, (int, float)):
        return float(sigma_policy)
    if sigma_policy == "2lambdak":
        return approx_sigma(basis.values[-1])
    if sigma_policy == "optimal":
        if basis.npairs >= g.n - 1:
            lam_next = basis.values[-1]
        else:
            ext = smallest_eigenpairs(g, basis.npairs + 1, tol=tol, seed=seed)
            lam_next = ext.values[-1]
        lam_n = largest_eigenvalue(g, tol=tol, seed=seed)
        return optimal_sigma(lam_next, max(lam_next, lam_n))
    raise BadParamsError(f"unknown sigma policy {sigma_policy!r}")


def build_operator(g: Graph, method: str, k: int = 3, sigma_policy="optimal",
                   tol: float = 1e-8, seed: int = 0, dense_cap: int = DENSE_CAP,
                   basis=None):
    """PinvOperator for ``method``; returns (operator, basis, sigma)."""
    if method == "exact":
        return ExactPinv(exact_pinv(g, dense_cap=dense_cap)), None, None
    if basis is None:
        basis = smallest_eigenpairs(g, k, tol=tol, seed=seed)
    elif basis.npairs < k:
        raise BadParamsError(f"cached basis holds {basis.npairs} pairs, need {k}")
    else:
        basis = basis.truncate(k)
    if method == "cutoff":
        return build_cutoff(basis), basis, None
    if method == "stretch":
        sigma = resolve_sigma(g, basis, sigma_policy, tol, seed)
        return build_stretch(basis, sigma), basis, sigma
    raise BadParamsError(f"unknown method {method!r}")


class LaplacianPseudoinverse(BaseEstimator):
    """Exact or low-rank representation of the Laplacian pseudoinverse.

    After ``fit(graph)`` the operator is available as ``operator_``;
    ``transform(B)`` applies it columnwise, i.e. returns minimum-norm
    solutions of G v = b for each column b.
    """

    def __init__(self, method="stretch", k=3, sigma_policy="optimal",
                 tol=1e-8, seed=0, dense_cap=DENSE_CAP):
        self.method = method
        self.k = k
        self.sigma_policy = sigma_policy
        self.tol = tol
        self.seed = seed
        self.dense_cap = dense_cap

    def fit(self, graph, y=None):
        g = check_graph(graph)
        if self.method not in METHODS[:3]:
            raise BadParamsError(f"method must be one of {METHODS[:3]}, got {self.method!r}")
        self.operator_, self.basis_, self.sigma_ = build_operator(
            g, self.method, k=self.k, sigma_policy=self.sigma_policy,
            tol=self.tol, seed=self.seed, dense_cap=self.dense_cap)
        self.n_features_in_ = g.n
        return self

    def transform(self, B):
        if not hasattr(self, "operator_"):
            raise NotFittedError("call fit before transform")
        B = np.asarray(B, dtype=np.float64)
        if B.ndim == 1:
            return self.operator_.apply(B)
        return np.column_stack([self.operator_.apply(B[:, j]) for j in range(B.shape[1])])

    def fit_transform(self, graph, B):
        return self.fit(graph).transform(B)


class CurrentFlowBetweenness(BaseEstimator):
    """Current-flow betweenness scores through any of the four modes.

    Attributes after fit: ``scores_`` (per node), ``ranks_`` (dense,
    label-tiebroken), ``operator_`` (None in fiedler mode), ``sigma_``.
    """

    def __init__(self, method="exact", k=3, sigma_policy="optimal", alpha=None,
                 tol=1e-8, seed=0, dense_cap=DENSE_CAP):
        self.method = method
        self.k = k
        self.sigma_policy = sigma_policy
        self.alpha = alpha
        self.tol = tol
        self.seed = seed
        self.dense_cap = dense_cap

    def fit(self, graph, y=None, basis=None):
        g = check_graph(graph)
        if self.method not in METHODS:
            raise BadParamsError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.method == "fiedler":
            if self.k != 1:
                raise BadParamsError("fiedler mode uses exactly one eigenpair (k = 1)")
            if basis is None:
                basis = smallest_eigenpairs(g, 1, tol=self.tol, seed=self.seed)
            else:
                basis = basis.truncate(1)
            result = flow.betweenness_fiedler(g, basis)
            self.operator_, self.basis_, self.sigma_ = None, basis, None
        else:
            op, basis, sigma = build_operator(
                g, self.method, k=self.k, sigma_policy=self.sigma_policy,
                tol=self.tol, seed=self.seed, dense_cap=self.dense_cap, basis=basis)
            sample = None if self.alpha is None else (self.alpha, self.seed)
            result = flow.betweenness(g, op, mode=self.method, sample=sample)
            self.operator_, self.basis_, self.sigma_ = op, basis, sigma
        self.result_ = result
        self.scores_ = result.b
        self.ranks_ = dense_ranks(result.b, labels=g.labels)
        self.labels_ = g.labels
        return self

    def fit_predict(self, graph, y=None):
        return self.fit(graph).scores_
