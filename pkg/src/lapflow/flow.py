"""Resistor-network flows and current-flow betweenness centrality.

Potentials for a unit current injected at s and removed at t come from
columns of a pseudoinverse operator: v_i = entry(i, s) - entry(i, t).
Betweenness averages the node throughputs over all (or a sampled set of)
source-target pairs, with the endpoint convention F_s = F_t = 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .approx import PinvOperator
from .errors import (
    BadAlphaError,
    IndexOutOfRangeError,
    InvalidPairError,
    NotConnectedError,
    WrongBasisSizeError,
)
from .graph import Graph
from .spectral import EigenBasis

# Endpoint throughput convention: 1.0 counts path endpoints as part of
# the path.  All reference numbers in the tests assume 1.0.
ENDPOINT_FLOW = 1.0

# chunk size for pair-vectorized betweenness; bounds peak memory at
# roughly m * PAIR_CHUNK floats
PAIR_CHUNK = 4096


@dataclass(frozen=True)
class SupplyPair:
    """Source/target outlet pair for a unit current."""

    s: int
    t: int

    def validate(self, n: int):
        if not (0 <= self.s < n and 0 <= self.t < n):
            raise InvalidPairError(f"pair ({self.s}, {self.t}) outside [0, {n})")
        if self.s == self.t:
            raise InvalidPairError("source and target must differ")

    def supply_vector(self, n: int) -> np.ndarray:
        u = np.zeros(n)
        u[self.s] = 1.0
        u[self.t] = -1.0
        return u


@dataclass(frozen=True)
class FlowResult:
    potentials: np.ndarray
    edge_currents: np.ndarray
    node_flow: np.ndarray


@dataclass(frozen=True)
class BetweennessScores:
    b: np.ndarray
    mode: str
    sample_fraction: float = 1.0
    pair_count: int = 0


def solve_flow(g: Graph, pinv: PinvOperator, sp: SupplyPair) -> FlowResult:
    """Potentials, signed edge currents and node throughputs for one pair."""
    if not g.is_connected():
        raise NotConnectedError("flow solve requires a connected graph")
    sp.validate(g.n)
    cols = pinv.columns(np.array([sp.s, sp.t]))
    v = cols[:, 0] - cols[:, 1]
    currents = g.weight * (v[g.edge_i] - v[g.edge_j])
    node_flow = 0.5 * (np.bincount(g.edge_i, weights=np.abs(currents), minlength=g.n)
                       + np.bincount(g.edge_j, weights=np.abs(currents), minlength=g.n))
    node_flow[sp.s] = ENDPOINT_FLOW
    node_flow[sp.t] = ENDPOINT_FLOW
    return FlowResult(potentials=v, edge_currents=currents, node_flow=node_flow)


def flow_through_node(g: Graph, pinv: PinvOperator, sp: SupplyPair, i: int) -> float:
    """Throughput of a single node, O(deg(i) * #pairs-in-operator)."""
    sp.validate(g.n)
    if not 0 <= i < g.n:
        raise IndexOutOfRangeError(f"node {i} outside [0, {g.n})")
    if i == sp.s or i == sp.t:
        return ENDPOINT_FLOW
    indptr, nbr, w = g.neighbors
    nbrs = nbr[indptr[i]:indptr[i + 1]]
    ww = w[indptr[i]:indptr[i + 1]]
    cols = pinv.columns(np.array([sp.s, sp.t]))
    v = cols[:, 0] - cols[:, 1]
    return float(0.5 * np.sum(ww * np.abs(v[i] - v[nbrs])))


def _accumulate_pairs(g: Graph, pinv: PinvOperator, src: np.ndarray, tgt: np.ndarray,
                      acc: np.ndarray):
    """Add node throughputs of the pairs (src[p], tgt[p]) into ``acc``."""
    for lo in range(0, len(src), PAIR_CHUNK):
        s = src[lo:lo + PAIR_CHUNK]
        t = tgt[lo:lo + PAIR_CHUNK]
        nodes, inverse = np.unique(np.concatenate([s, t]), return_inverse=True)
        cols = pinv.columns(nodes)
        v = cols[:, inverse[:len(s)]] - cols[:, inverse[len(s):]]  # n x P potentials
        cur = g.weight[:, None] * np.abs(v[g.edge_i] - v[g.edge_j])
        p = len(s)
        offs = np.arange(p)
        flat_i = (g.edge_i[:, None] * p + offs).ravel()
        flat_j = (g.edge_j[:, None] * p + offs).ravel()
        flow = np.bincount(flat_i, weights=cur.ravel(), minlength=g.n * p)
        flow += np.bincount(flat_j, weights=cur.ravel(), minlength=g.n * p)
        flow = 0.5 * flow.reshape(g.n, p)
        cols_idx = np.arange(len(s))
        flow[s, cols_idx] = ENDPOINT_FLOW
        flow[t, cols_idx] = ENDPOINT_FLOW
        acc += flow.sum(axis=1)


def betweenness(g: Graph, pinv: PinvOperator, mode: str = "exact",
                sample: tuple | None = None) -> BetweennessScores:
    """Current-flow betweenness of every node.

    Full mode averages throughputs over all n(n-1)/2 unordered pairs.
    With ``sample = (alpha, seed)``, a stratified fraction alpha^2 of the
    ordered pair space is visited: every node acts as a source and draws
    ceil(alpha^2 * n) targets without replacement from the remaining
    nodes.  Stratifying over sources keeps the per-node variance low
    (clustering the sample on a few sources inflates the throughput of
    their neighborhoods) and keeps the endpoint contribution unbiased at
    2/n in expectation.  Normalization uses the realized pair count and
    a pair drawn under both orientations is counted each time.
    """
    if not g.is_connected():
        raise NotConnectedError("betweenness requires a connected graph")
    if g.n < 2:
        raise NotConnectedError("betweenness needs at least two nodes")
    acc = np.zeros(g.n)
    if sample is None:
        ii, jj = np.triu_indices(g.n, k=1)
        _accumulate_pairs(g, pinv, ii, jj, acc)
        pairs = g.n * (g.n - 1) // 2
        frac = 1.0
    else:
        alpha, seed = sample
        if not 0 < alpha <= 1:
            raise BadAlphaError(f"alpha must be in (0, 1], got {alpha}")
        rng = np.random.default_rng(seed)
        ntgt_nominal = int(np.ceil(alpha * alpha * g.n))
        src_list, tgt_list = [], []
        for s in range(g.n):
            others = np.delete(np.arange(g.n), s)
            ntgt = min(ntgt_nominal, len(others))
            targets = rng.choice(others, size=ntgt, replace=False)
            src_list.append(np.full(ntgt, s))
            tgt_list.append(targets)
        src = np.concatenate(src_list)
        tgt = np.concatenate(tgt_list)
        _accumulate_pairs(g, pinv, src, tgt, acc)
        pairs = len(src)
        frac = alpha
    return BetweennessScores(b=acc / pairs, mode=mode, sample_fraction=frac, pair_count=pairs)


def betweenness_fiedler(g: Graph, basis: EigenBasis) -> BetweennessScores:
    """Unnormalized local scores sum_j A_ij |v2[i] - v2[j]|, O(n + m).

    Ranking-equivalent to cutoff betweenness with a single eigenpair; the
    pair-dependent constant is dropped.
    """
    if not g.is_connected():
        raise NotConnectedError("betweenness requires a connected graph")
    if basis.npairs != 1:
        raise WrongBasisSizeError(f"fiedler mode needs exactly one eigenpair, got {basis.npairs}")
    v2 = basis.vectors[:, 0]
    diff = g.weight * np.abs(v2[g.edge_i] - v2[g.edge_j])
    h = (np.bincount(g.edge_i, weights=diff, minlength=g.n)
         + np.bincount(g.edge_j, weights=diff, minlength=g.n))
    return BetweennessScores(b=h, mode="fiedler", sample_fraction=1.0, pair_count=0)
