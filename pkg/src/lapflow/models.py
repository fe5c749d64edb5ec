"""Seeded random graph generators: Erdos-Renyi and Barabasi-Albert.

Both are pure functions of (parameters, seed) using numpy's PCG64
generator, so identical inputs reproduce identical graphs on any
platform.
"""
from __future__ import annotations

import numpy as np

from .errors import BadParamsError, DegenerateComponentError
from .graph import Graph


def gen_er(n: int, q: float, seed: int = 0) -> Graph:
    """Giant component of an ER draw with edge probability p = q/n.

    Every unordered pair is included independently; the largest connected
    component is extracted and relabeled densely (original ids kept as
    labels).
    """
    if n < 2 or not 0 < q < n:
        raise BadParamsError(f"need n >= 2 and 0 < q < n, got n={n}, q={q}")
    rng = np.random.default_rng(seed)
    p = q / n
    ii, jj = np.triu_indices(n, k=1)
    mask = rng.random(len(ii)) < p
    full = Graph(n=n, edge_i=ii[mask], edge_j=jj[mask], weight=np.ones(mask.sum()))
    comp = full.components()
    sizes = np.bincount(comp, minlength=1)
    giant = np.flatnonzero(comp == np.argmax(sizes))
    if len(giant) < 2:
        raise DegenerateComponentError("giant component has fewer than 2 nodes")
    return full.subgraph(giant)


def gen_ba(n: int, r: int, seed: int = 0) -> Graph:
    """Preferential-attachment graph grown from a single node.

    Growth follows the directed citation form of the model: each arriving
    node draws r attachment targets with probability proportional to
    in-degree plus one (the plus-one lets nodes with no citations yet be
    chosen).  Draws are with replacement via a token bag holding one
    token per node plus one per received link; parallel edges are
    removed at the end, so m <= r(n-1).  The final graph is undirected.
    This is the variant behind the common R/igraph defaults, and it
    yields a heavier degree tail than attachment by total degree.
    """
    if n < 2 or r < 1:
        raise BadParamsError(f"need n >= 2 and r >= 1, got n={n}, r={r}")
    rng = np.random.default_rng(seed)
    # token bag: node i appears once plus once per incoming link
    bag = np.empty((r + 1) * (n - 1) + 1, dtype=np.int64)
    bag[0] = 0
    filled = 1
    edges = set()
    for new in range(1, n):
        targets = bag[rng.integers(0, filled, size=r)]
        # every draw counts toward in-degree (multi-edges live during
        # growth); the edge set dedupes for the final simple graph
        for t in targets:
            edges.add((int(t), new))
            bag[filled] = t
            filled += 1
        bag[filled] = new
        filled += 1
    ei = np.fromiter((e[0] for e in sorted(edges)), dtype=np.int64)
    ej = np.fromiter((e[1] for e in sorted(edges)), dtype=np.int64)
    return Graph(n=n, edge_i=ei, edge_j=ej, weight=np.ones(len(ei)))
