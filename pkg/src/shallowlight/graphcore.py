"""Geometric graphs, minimum spanning trees, and rooted shortest-path trees.

Vertices carry coordinates and a kind tag (input point, Steiner point, or the
source). Edge weights are always the Euclidean distance between endpoints;
GeoGraph.build recomputes them from coordinates so they cannot drift.

mst() is exact: a dense O(n^2) Prim for n <= 3000, and above that Prim-style
construction on a k-nearest-neighbor candidate graph (k=16, doubled until the
candidate graph is connected), which the tests validate against the dense
version. shortest_path_tree is binary-heap Dijkstra with parent ties broken
toward the lower vertex id.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import minimum_spanning_tree as _scipy_mst
from scipy.spatial import cKDTree

KIND_INPUT = 0
KIND_STEINER = 1
KIND_SOURCE = 2

KIND_NAMES = {KIND_INPUT: "input", KIND_STEINER: "steiner", KIND_SOURCE: "source"}
KIND_CODES = {v: k for k, v in KIND_NAMES.items()}

_EXACT_MST_LIMIT = 3000


@dataclass
class GeoGraph:
    """Undirected weighted geometric graph with canonical edge storage."""

    xy: np.ndarray  # (m, 2) float64
    kind: np.ndarray  # (m,) int8
    edges: np.ndarray  # (e, 2) int64, u < v, lexicographically sorted, unique
    weights: np.ndarray  # (e,) float64, Euclidean length of each edge

    @classmethod
    def build(cls, xy, kind, edge_pairs) -> "GeoGraph":
        xy = np.ascontiguousarray(np.asarray(xy, dtype=np.float64).reshape(-1, 2))
        kind = np.asarray(kind, dtype=np.int8)
        if kind.shape[0] != xy.shape[0]:
            raise ValueError("kind/coordinate length mismatch")
        e = np.asarray(edge_pairs, dtype=np.int64).reshape(-1, 2)
        if e.size:
            if e.min() < 0 or e.max() >= xy.shape[0]:
                raise ValueError("edge endpoint out of range")
            if np.any(e[:, 0] == e[:, 1]):
                raise ValueError("self loop")
            e = np.sort(e, axis=1)
            e = np.unique(e, axis=0)
        w = np.hypot(
            xy[e[:, 0], 0] - xy[e[:, 1], 0], xy[e[:, 0], 1] - xy[e[:, 1], 1]
        ) if e.size else np.zeros(0)
        return cls(xy, kind, e, w)

    @property
    def n_vertices(self) -> int:
        return self.xy.shape[0]

    def total_weight(self) -> float:
        # sorted before summing so equal edge multisets give bitwise-equal totals
        return float(np.sort(self.weights).sum())

    def adjacency_csr(self):
        """Symmetric CSR arrays (indptr, nbr, wt) for traversal."""
        n = self.n_vertices
        e = self.edges
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        ww = np.concatenate([self.weights, self.weights])
        order = np.argsort(src, kind="stable")
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return indptr, dst[order], ww[order]


@dataclass
class RootedTree:
    """Tree with parent pointers toward root and exact root distances."""

    xy: np.ndarray  # (m, 2)
    kind: np.ndarray  # (m,) int8
    root: int
    parent: np.ndarray  # (m,) int64, -1 at the root
    root_dist: np.ndarray  # (m,) float64

    def __post_init__(self):
        if self.parent[self.root] != -1:
            raise ValueError("root must have parent -1")

    @property
    def n_vertices(self) -> int:
        return self.xy.shape[0]

    def edge_list(self) -> np.ndarray:
        """(child, parent) pairs for all non-root vertices, child ascending."""
        children = np.flatnonzero(self.parent >= 0)
        return np.stack([children, self.parent[children]], axis=1)

    def weight(self) -> float:
        e = self.edge_list()
        if not e.size:
            return 0.0
        d = np.hypot(
            self.xy[e[:, 0], 0] - self.xy[e[:, 1], 0],
            self.xy[e[:, 0], 1] - self.xy[e[:, 1], 1],
        )
        # sorted before summing so equal edge multisets give bitwise-equal totals
        return float(np.sort(d).sum())


def _prim_dense(xy: np.ndarray):
    """Exact Prim in O(n^2) with numpy row updates; starts at vertex 0."""
    n = xy.shape[0]
    in_tree = np.zeros(n, dtype=bool)
    best = np.full(n, np.inf)
    best_from = np.zeros(n, dtype=np.int64)
    in_tree[0] = True
    best[0] = np.inf
    d0 = np.hypot(xy[:, 0] - xy[0, 0], xy[:, 1] - xy[0, 1])
    mask = ~in_tree
    best[mask] = d0[mask]
    edges = np.empty((n - 1, 2), dtype=np.int64)
    for t in range(n - 1):
        u = int(np.argmin(np.where(in_tree, np.inf, best)))
        edges[t] = (best_from[u], u)
        in_tree[u] = True
        du = np.hypot(xy[:, 0] - xy[u, 0], xy[:, 1] - xy[u, 1])
        closer = (~in_tree) & (du < best)
        best[closer] = du[closer]
        best_from[closer] = u
    return edges


def _mst_knn(xy: np.ndarray):
    """MST on a k-NN candidate graph, doubling k until connected."""
    n = xy.shape[0]
    k = 16
    tree = cKDTree(xy)
    while True:
        kk = min(k + 1, n)
        _, idx = tree.query(xy, k=kk)
        rows = np.repeat(np.arange(n), kk - 1)
        cols = idx[:, 1:].reshape(-1)
        w = np.hypot(
            xy[rows, 0] - xy[cols, 0], xy[rows, 1] - xy[cols, 1]
        )
        g = csr_matrix((w, (rows, cols)), shape=(n, n))
        t = _scipy_mst(g)
        t = t.tocoo()
        if t.nnz == n - 1:
            e = np.sort(np.stack([t.row, t.col], axis=1).astype(np.int64), axis=1)
            order = np.lexsort((e[:, 1], e[:, 0]))
            return e[order]
        if kk >= n:
            raise RuntimeError("k-NN MST failed to connect at k=n")
        k *= 2


def mst(points) -> tuple[np.ndarray, float]:
    """Exact Euclidean MST: ((n-1, 2) edge array, total weight)."""
    xy = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    n = xy.shape[0]
    if n == 0:
        raise ValueError("mst: empty point set")
    if n == 1:
        return np.empty((0, 2), dtype=np.int64), 0.0
    if n <= _EXACT_MST_LIMIT:
        e = _prim_dense(xy)
    else:
        e = _mst_knn(xy)
    d = np.hypot(xy[e[:, 0], 0] - xy[e[:, 1], 0], xy[e[:, 0], 1] - xy[e[:, 1], 1])
    w = float(np.sort(d).sum())  # order-canonical sum, see RootedTree.weight
    return e, w


def shortest_path_tree(g: GeoGraph, root: int) -> RootedTree:
    """Dijkstra SPT from root; parent ties resolve to the lower vertex id."""
    n = g.n_vertices
    if not 0 <= root < n:
        raise ValueError("shortest_path_tree: root out of range")
    indptr_a, nbr_a, wt_a = g.adjacency_csr()
    indptr = indptr_a.tolist()
    nbr = nbr_a.tolist()
    wt = wt_a.tolist()
    INF = math.inf
    dist = [INF] * n
    parent = [-1] * n
    done = bytearray(n)
    dist[root] = 0.0
    heap = [(0.0, root)]
    pop = heapq.heappop
    push = heapq.heappush
    while heap:
        d, u = pop(heap)
        if done[u]:
            continue
        done[u] = 1
        du = dist[u]
        if d > du:
            continue
        for i in range(indptr[u], indptr[u + 1]):
            v = nbr[i]
            nd = du + wt[i]
            dv = dist[v]
            if nd < dv:
                dist[v] = nd
                parent[v] = u
                push(heap, (nd, v))
            elif nd == dv and parent[v] > u:
                parent[v] = u
    unreachable = [i for i in range(n) if dist[i] == INF]
    if unreachable:
        raise ValueError(f"shortest_path_tree: unreachable vertices {unreachable[:10]}")
    return RootedTree(
        g.xy,
        g.kind,
        root,
        np.asarray(parent, dtype=np.int64),
        np.asarray(dist, dtype=np.float64),
    )


def root_stretch(tree: RootedTree, instance) -> float:
    """max over input points p != source of root_dist(p) / d(p, source).

    Requires the first n tree vertices to be the instance points, in order.
    """
    pts = instance.points
    n = pts.shape[0]
    if tree.n_vertices < n or not np.array_equal(tree.xy[:n], pts):
        raise ValueError("root_stretch: tree does not carry the instance points")
    s = pts[instance.source_index]
    d = np.hypot(pts[:, 0] - s[0], pts[:, 1] - s[1])
    mask = np.arange(n) != instance.source_index
    return float(np.max(tree.root_dist[:n][mask] / d[mask]))


def lightness(tree: RootedTree, instance) -> float:
    """Tree weight over the weight of the MST of the instance points."""
    _, w = mst(instance.points)
    if w == 0.0:
        raise ValueError("lightness: degenerate instance with zero MST weight")
    return tree.weight() / w
