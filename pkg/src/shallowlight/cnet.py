"""Centered eps-nets and per-cluster 2-spanners.

A centered eps-net N of a point set P around source s satisfies
  separation: d(a, b) > eps * min(d(a,s), d(b,s)) for distinct a, b in N,
  covering:   every p in P has a net point a with d(p, a) <= eps * d(a,s).

build_cnet is the greedy in ascending distance-to-source order, which makes
the covering radius of the assigned net point at most eps * d(p, s) and keeps
net points no farther from s than the points they cover. Neighbor lookups are
bucketed by distance ring (floor log2 d(a,s)) and grid cell so the greedy
stays near-linear; the tests recheck both conditions in O(n^2).

cluster_spanner is the path-greedy 2-spanner: candidate pairs ascending by
length, an edge is added iff the current spanner distance exceeds twice the
Euclidean distance. The all-pairs distances are maintained incrementally with
numpy so the scan stays exact and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass
class CenteredNet:
    """Net points (ascending d(.,s) insertion order) and coverage assignment.

    net holds point indices; assignment maps every point index to a position
    in net (net points map to themselves). eps and source are kept for
    downstream radius checks.
    """

    net: list[int]
    assignment: np.ndarray  # (n,) int64, position into net
    eps: float
    source: tuple[float, float]


def build_cnet(points, source, eps: float) -> CenteredNet:
    """Greedy centered eps-net over points (ascending d(p, source), ties by index)."""
    if not 0.0 < eps < 1.0 / 9.0:
        raise ValueError(f"build_cnet: eps={eps} outside (0, 1/9)")
    xy = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    n = xy.shape[0]
    sx, sy = float(source[0]), float(source[1])
    d = np.hypot(xy[:, 0] - sx, xy[:, 1] - sy)
    if np.any(d == 0.0):
        raise ValueError("build_cnet: a point coincides with the source")
    order = np.argsort(d, kind="stable")
    # ring r holds net points with d in [2^r, 2^{r+1}); cell size eps * 2^{r+1}
    # bounds their covering radius, so a 3x3 cell window suffices per ring.
    rings = np.frexp(d)[1].astype(np.int64) - 1
    net: list[int] = []
    net_pos = np.full(n, -1, dtype=np.int64)
    assignment = np.full(n, -1, dtype=np.int64)
    grids: dict[int, dict[tuple[int, int], list[int]]] = {}
    xs = xy[:, 0]
    ys = xy[:, 1]
    for p in order.tolist():
        px = xs[p]
        py = ys[p]
        best = -1
        for r in (int(rings[p]), int(rings[p]) - 1):
            grid = grids.get(r)
            if grid is None:
                continue
            cell = eps * math.ldexp(1.0, r + 1)
            cx = math.floor(px / cell)
            cy = math.floor(py / cell)
            for gx in (cx - 1, cx, cx + 1):
                for gy in (cy - 1, cy, cy + 1):
                    for a in grid.get((gx, gy), ()):
                        if math.hypot(px - xs[a], py - ys[a]) <= eps * d[a]:
                            pos = net_pos[a]
                            if best < 0 or pos < best:
                                best = pos
        if best >= 0:
            assignment[p] = best
            continue
        net_pos[p] = len(net)
        assignment[p] = len(net)
        net.append(p)
        r = int(rings[p])
        cell = eps * math.ldexp(1.0, r + 1)
        key = (math.floor(px / cell), math.floor(py / cell))
        grids.setdefault(r, {}).setdefault(key, []).append(p)
    return CenteredNet(net, assignment, eps, (sx, sy))


def cluster_spanner(cluster) -> list[tuple[int, int]]:
    """Path-greedy stretch-2 spanner edges over one cluster (index pairs).

    Pairs ascend by (distance, i, j); an edge joins the spanner iff the
    current spanner distance between its endpoints exceeds 2x its length.
    """
    xy = np.asarray(cluster, dtype=np.float64).reshape(-1, 2)
    m = xy.shape[0]
    if m <= 1:
        return []
    if m == 2:
        return [(0, 1)]
    diff = xy[:, None, :] - xy[None, :, :]
    dm = np.hypot(diff[..., 0], diff[..., 1])
    iu, ju = np.triu_indices(m, 1)
    lens = dm[iu, ju]
    order = np.lexsort((ju, iu, lens))
    pi = iu[order]
    pj = ju[order]
    plen = lens[order]
    dist = np.full((m, m), np.inf)
    np.fill_diagonal(dist, 0.0)
    edges: list[tuple[int, int]] = []
    pos = 0
    npairs = plen.shape[0]
    while pos < npairs:
        # all pairs until the next added edge see the same distance matrix,
        # so the sequential greedy reduces to a vectorized scan
        viol = dist[pi[pos:], pj[pos:]] > 2.0 * plen[pos:]
        hit = np.argmax(viol)
        if not viol[hit]:
            break
        pos += int(hit)
        i, j, w = int(pi[pos]), int(pj[pos]), float(plen[pos])
        edges.append((i, j))
        # exact incremental APSP: a shortest path uses the new edge at most once
        cand = np.minimum(dist[:, i][:, None] + w + dist[j, :][None, :],
                          dist[:, j][:, None] + w + dist[i, :][None, :])
        np.minimum(dist, cand, out=dist)
        pos += 1
    return edges
