"""Shared test utilities: oracles and samplers the suites compare against."""

from __future__ import annotations

import math

import numpy as np

from shallowlight import Instance


def make_instance(points, eps, source_index=0) -> Instance:
    return Instance(np.asarray(points, dtype=np.float64), source_index, eps)


def floyd_warshall(n: int, edges) -> np.ndarray:
    """Dense all-pairs shortest paths; edges are (u, v, w) triples."""
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    for u, v, w in edges:
        if w < d[u, v]:
            d[u, v] = d[v, u] = w
    for m in range(n):
        d = np.minimum(d, d[:, m, None] + d[None, m, :])
    return d


def ellipse_frame(e):
    """(center, a_semi, b_semi, cos t, sin t) of a focal ellipse."""
    f1 = np.asarray(e.f1, dtype=np.float64)
    f2 = np.asarray(e.f2, dtype=np.float64)
    c = 0.5 * (f1 + f2)
    a = 0.5 * e.dist_sum
    foc = 0.5 * float(np.hypot(*(f2 - f1)))
    b = math.sqrt(max(a * a - foc * foc, 0.0))
    if foc > 0.0:
        ct, st = (f2 - c) / foc
    else:
        ct, st = 1.0, 0.0
    return c, a, b, float(ct), float(st)


def sample_ellipse(e, count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform-in-area sample of a focal ellipse, boundary included."""
    c, a, b, ct, st = ellipse_frame(e)
    phi = rng.uniform(0.0, 2.0 * math.pi, count)
    r = np.sqrt(rng.uniform(0.0, 1.0, count))
    r[: max(count // 10, 1)] = 1.0  # force some exact boundary points
    ex = a * r * np.cos(phi)
    ey = b * r * np.sin(phi)
    return np.stack([c[0] + ct * ex - st * ey, c[1] + st * ex + ct * ey], axis=1)


def dist_sums(e, qs: np.ndarray) -> np.ndarray:
    f1 = np.asarray(e.f1)
    f2 = np.asarray(e.f2)
    return np.hypot(qs[:, 0] - f1[0], qs[:, 1] - f1[1]) + np.hypot(
        qs[:, 0] - f2[0], qs[:, 1] - f2[1]
    )


def inner_horizontal_focus(p, s):
    """Point a on the horizontal through p with d(p,a) = d(a,s)."""
    px, py = float(p[0]), float(p[1])
    sx, sy = float(s[0]), float(s[1])
    if px == sx:
        raise ValueError("p and s on a vertical line")
    dy = py - sy
    return (0.5 * (px + sx) + dy * dy / (2.0 * (sx - px)), py)


def loglog_slope(inv_eps, values) -> float:
    """Least-squares slope of log(values) against log(inv_eps)."""
    x = np.log(np.asarray(inv_eps, dtype=np.float64))
    y = np.log(np.asarray(values, dtype=np.float64))
    x = x - x.mean()
    return float((x * (y - y.mean())).sum() / (x * x).sum())


def tree_edge_set(tree):
    """Frozen set of (min, max) parent edges of a RootedTree."""
    return {
        (min(v, int(p)), max(v, int(p)))
        for v, p in enumerate(tree.parent.tolist())
        if p >= 0
    }


def check_tree_shape(tree, instance):
    """Structural checks shared by every builder's output."""
    n = instance.n
    m = tree.xy.shape[0]
    assert m >= n
    assert np.array_equal(tree.xy[:n], instance.points)
    assert tree.root == instance.source_index
    assert tree.parent[tree.root] == -1
    # every non-root vertex reaches the root without cycles
    for v in range(m):
        seen = 0
        u = v
        while u != tree.root:
            u = int(tree.parent[u])
            seen += 1
            assert 0 <= u < m
            assert seen <= m, "parent chain does not terminate"
    # root_dist is consistent with the parent chain
    for v in range(m):
        p = int(tree.parent[v])
        if p >= 0:
            step = math.dist(tree.xy[v], tree.xy[p])
            assert abs(tree.root_dist[v] - (tree.root_dist[p] + step)) <= 1e-9 * max(
                1.0, tree.root_dist[v]
            )
