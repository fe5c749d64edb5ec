"""Immutable undirected weighted graph with Laplacian views.

The graph is the single source of the adjacency matrix A, the degree
matrix D and the Laplacian G = D - A.  G is never materialized densely
except through :func:`dense_laplacian`, which is intended for small
instances and test oracles.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    DimensionMismatchError,
    DuplicateEdgeError,
    IndexOutOfRangeError,
    NonPositiveWeightError,
    SelfLoopError,
)


@dataclass(frozen=True)
class Graph:
    """Undirected weighted graph, frozen after construction.

    Edges are stored once per unordered pair in ``edge_i < edge_j`` order
    is *not* guaranteed; use :attr:`edge_i`/:attr:`edge_j`/:attr:`weight`
    as parallel arrays.  All weights are strictly positive conductances.
    """

    n: int
    edge_i: np.ndarray
    edge_j: np.ndarray
    weight: np.ndarray
    labels: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "edge_i", np.ascontiguousarray(self.edge_i, dtype=np.int64))
        object.__setattr__(self, "edge_j", np.ascontiguousarray(self.edge_j, dtype=np.int64))
        object.__setattr__(self, "weight", np.ascontiguousarray(self.weight, dtype=np.float64))
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.n)))
        if np.any(self.edge_i == self.edge_j):
            raise SelfLoopError("self-loops are not allowed")
        if np.any(self.weight <= 0):
            raise NonPositiveWeightError("edge weights must be strictly positive")
        lo = np.minimum(self.edge_i, self.edge_j)
        hi = np.maximum(self.edge_i, self.edge_j)
        if len(np.unique(lo * self.n + hi)) != self.m:
            raise DuplicateEdgeError("duplicate edges are not allowed")
        if self.m and (lo.min() < 0 or hi.max() >= self.n):
            raise IndexOutOfRangeError("edge endpoint out of range")

    @property
    def m(self) -> int:
        return len(self.edge_i)

    @cached_property
    def degrees(self) -> np.ndarray:
        """Generalized degrees d_i = sum of incident weights."""
        d = np.bincount(self.edge_i, weights=self.weight, minlength=self.n)
        d += np.bincount(self.edge_j, weights=self.weight, minlength=self.n)
        return d

    @cached_property
    def neighbors(self) -> tuple:
        """Per-node arrays of (neighbor ids, weights), CSR-style."""
        both_i = np.concatenate([self.edge_i, self.edge_j])
        both_j = np.concatenate([self.edge_j, self.edge_i])
        both_w = np.concatenate([self.weight, self.weight])
        order = np.argsort(both_i, kind="stable")
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(both_i, minlength=self.n), out=indptr[1:])
        return indptr, both_j[order], both_w[order]

    def laplacian_apply(self, x: np.ndarray) -> np.ndarray:
        """Return (D - A) x in O(n + m) without materializing G."""
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.n,):
            raise DimensionMismatchError(f"expected vector of length {self.n}, got shape {x.shape}")
        y = self.degrees * x
        y -= np.bincount(self.edge_i, weights=self.weight * x[self.edge_j], minlength=self.n)
        y -= np.bincount(self.edge_j, weights=self.weight * x[self.edge_i], minlength=self.n)
        return y

    def is_connected(self) -> bool:
        """True iff the graph has exactly one component (n = 0 is False)."""
        if self.n == 0:
            return False
        if self.n == 1:
            return True
        parent = np.arange(self.n)

        def find(a):
            root = a
            while parent[root] != root:
                root = parent[root]
            while parent[a] != root:
                parent[a], a = root, parent[a]
            return root

        for a, b in zip(self.edge_i, self.edge_j):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        root = find(0)
        return all(find(v) == root for v in range(self.n))

    def components(self) -> np.ndarray:
        """Component id per node, ids dense by first appearance."""
        comp = np.full(self.n, -1, dtype=np.int64)
        indptr, nbr, _ = self.neighbors
        next_id = 0
        for start in range(self.n):
            if comp[start] >= 0:
                continue
            stack = [start]
            comp[start] = next_id
            while stack:
                v = stack.pop()
                for u in nbr[indptr[v]:indptr[v + 1]]:
                    if comp[u] < 0:
                        comp[u] = next_id
                        stack.append(u)
            next_id += 1
        return comp

    def subgraph(self, nodes: np.ndarray) -> "Graph":
        """Induced subgraph on ``nodes``, relabeled densely in given order."""
        nodes = np.asarray(nodes, dtype=np.int64)
        remap = np.full(self.n, -1, dtype=np.int64)
        remap[nodes] = np.arange(len(nodes))
        keep = (remap[self.edge_i] >= 0) & (remap[self.edge_j] >= 0)
        return Graph(
            n=len(nodes),
            edge_i=remap[self.edge_i[keep]],
            edge_j=remap[self.edge_j[keep]],
            weight=self.weight[keep],
            labels=tuple(self.labels[v] for v in nodes),
        )

    def adjacency_dense(self) -> np.ndarray:
        """Dense weighted adjacency matrix; test/oracle use only."""
        a = np.zeros((self.n, self.n))
        a[self.edge_i, self.edge_j] = self.weight
        a[self.edge_j, self.edge_i] = self.weight
        return a


def from_edge_list(rows, default_weight: float = 1.0) -> Graph:
    """Build a Graph from (i, j) or (i, j, w) rows.

    Node tokens may be arbitrary labels; they are mapped to dense ids by
    first appearance.  Integer-like labels are kept as written.
    """
    ids = {}
    ei, ej, w = [], [], []
    for row in rows:
        if len(row) == 2:
            a, b = row
            weight = default_weight
        else:
            a, b, weight = row
        if a == b:
            raise SelfLoopError(f"self-loop on node {a!r}")
        weight = float(weight)
        if weight <= 0:
            raise NonPositiveWeightError(f"non-positive weight {weight} on edge ({a!r}, {b!r})")
        for tok in (a, b):
            if tok not in ids:
                ids[tok] = len(ids)
        ia, ib = ids[a], ids[b]
        ei.append(ia)
        ej.append(ib)
        w.append(weight)
    n = len(ids)
    seen = set()
    for ia, ib in zip(ei, ej):
        key = (min(ia, ib), max(ia, ib))
        if key in seen:
            labels = list(ids)
            raise DuplicateEdgeError(f"duplicate edge ({labels[ia]!r}, {labels[ib]!r})")
        seen.add(key)
    return Graph(n=n, edge_i=np.array(ei, dtype=np.int64), edge_j=np.array(ej, dtype=np.int64),
                 weight=np.array(w), labels=tuple(str(t) for t in ids))


def dense_laplacian(g: Graph) -> np.ndarray:
    """Dense G = D - A; test/oracle use only."""
    a = g.adjacency_dense()
    return np.diag(g.degrees) - a
