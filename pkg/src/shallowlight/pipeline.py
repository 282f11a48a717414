"""End-to-end tree construction.

Stages: assign every non-source point to a tile of the source-centered
decomposition; per tile, extract a centered eps-net, map to the canonical
frame and run the tile algorithm (Steiner ladder paths or the point-restricted
hitting-set variant); add a 2-spanner inside every net cluster; union all
edges over the input points (plus Steiner vertices) and the source; take the
shortest-path tree from the source; finally drop Steiner vertices that serve
no input point (degree-1 Steiner chains).

Tiles are independent and may run on a thread pool; results are merged in
sorted tile order, so the output is identical for any thread count.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .cnet import build_cnet, cluster_spanner
from .graphcore import (
    KIND_INPUT,
    KIND_SOURCE,
    KIND_STEINER,
    GeoGraph,
    RootedTree,
    root_stretch,
    shortest_path_tree,
)
from .restricted import restricted_tile_paths
from .steiner import steiner_tile_paths
from .tiling import TileId, TilingParams, canonical_frame, tiles_of

MODES = ("steiner", "restricted")


@dataclass
class TileStats:
    tile: tuple[int, int]
    n_points: int
    net_size: int
    path_weight: float  # tile path-graph weight, world units
    spanner_weight: float


@dataclass
class BuildReport:
    mode: str
    eps: float
    threads: int
    tiles: list[TileStats]
    n_steiner: int  # surviving Steiner vertices in the final tree
    union_graph_weight: float
    tree_weight: float
    max_stretch: float
    wall_time_s: float


@dataclass
class _TileOut:
    stats: TileStats
    point_edges: list[tuple[int, int]]  # global input/source ids
    steiner_xy: list[tuple[float, float]]  # world coords, tile-local order
    steiner_edges: list[tuple[int, int]]  # >= 0 global id, < 0 is -1-slot


def _run_tile(tile_key, member_ids, instance, params, mode):
    world = instance.points[member_ids]
    src = instance.source
    eps = instance.eps
    cn = build_cnet(world, src, eps)
    frame = canonical_frame(TileId(*tile_key), params)
    canon = frame.to_canonical_many(world)
    src_gid = instance.source_index

    # cluster spanners (both modes): net point + the points it covers
    clusters: dict[int, list[int]] = {}
    for i, pos in enumerate(cn.assignment.tolist()):
        clusters.setdefault(pos, []).append(i)
    point_edges: list[tuple[int, int]] = []
    spanner_w = 0.0
    for pos in range(len(cn.net)):
        mem = clusters.get(pos, [])
        for a, b in cluster_spanner(world[mem]):
            u = int(member_ids[mem[a]])
            v = int(member_ids[mem[b]])
            point_edges.append((u, v))
            spanner_w += float(np.hypot(*(instance.points[u] - instance.points[v])))

    steiner_xy: list[tuple[float, float]] = []
    steiner_edges: list[tuple[int, int]] = []
    if mode == "steiner":
        res = steiner_tile_paths(canon[cn.net], eps)
        m = len(cn.net)
        code = {}
        for v in range(res.graph.n_vertices):
            if v < m:
                code[v] = int(member_ids[cn.net[v]])
            elif v == res.source_id:
                code[v] = src_gid
            else:
                code[v] = -1 - len(steiner_xy)
                steiner_xy.append(frame.from_canonical(res.graph.xy[v]))
        for u, v in res.graph.edges.tolist():
            cu, cv = code[u], code[v]
            if cu >= 0 and cv >= 0:
                point_edges.append((cu, cv))
            else:
                steiner_edges.append((cu, cv))
    else:
        res = restricted_tile_paths(cn.net, canon, eps)
        nt = canon.shape[0]
        for u, v in res.graph.edges.tolist():
            gu = src_gid if u == nt else int(member_ids[u])
            gv = src_gid if v == nt else int(member_ids[v])
            point_edges.append((gu, gv))

    path_w = res.graph.total_weight() / frame.scale  # canonical -> world units
    stats = TileStats(tuple(tile_key), len(member_ids), len(cn.net), path_w, spanner_w)
    return _TileOut(stats, point_edges, steiner_xy, steiner_edges)


def build_slt(instance, mode: str = "steiner", threads: int = 1):
    """Build the tree: returns (RootedTree, BuildReport).

    The first n tree vertices are the instance points in input order; any
    surviving Steiner vertices follow. The tree root is the source.
    """
    if mode not in MODES:
        raise ValueError(f"build_slt: unknown mode {mode!r}")
    eps = instance.eps
    if not 0.0 < eps <= 1.0 / 16.0:
        raise ValueError(f"build_slt: eps={eps} outside (0, 1/16]")
    n = instance.n
    if n < 2:
        raise ValueError("build_slt: need at least 2 points")
    t0 = time.perf_counter()

    params = TilingParams.for_eps(instance.source, eps)
    others = np.flatnonzero(np.arange(n) != instance.source_index)
    rings, sectors = tiles_of(instance.points[others], params)
    order = np.lexsort((others, sectors, rings))
    rr, ss, oo = rings[order], sectors[order], others[order]
    cuts = np.flatnonzero((np.diff(rr) != 0) | (np.diff(ss) != 0)) + 1
    groups = np.split(np.arange(oo.shape[0]), cuts)
    work = [((int(rr[g[0]]), int(ss[g[0]])), oo[g]) for g in groups]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            outs = list(
                ex.map(lambda w: _run_tile(w[0], w[1], instance, params, mode), work)
            )
    else:
        outs = [_run_tile(key, ids, instance, params, mode) for key, ids in work]

    # merge in tile order; Steiner ids are assigned sequentially across tiles
    steiner_xy: list[tuple[float, float]] = []
    edges: list[tuple[int, int]] = []
    for out in outs:
        base = n + len(steiner_xy)
        steiner_xy.extend(out.steiner_xy)
        edges.extend(out.point_edges)
        edges.extend(
            (base - 1 - u if u < 0 else u, base - 1 - v if v < 0 else v)
            for u, v in out.steiner_edges
        )

    xy = np.vstack([instance.points, np.asarray(steiner_xy).reshape(-1, 2)])
    kind = np.full(xy.shape[0], KIND_INPUT, dtype=np.int8)
    kind[instance.source_index] = KIND_SOURCE
    kind[n:] = KIND_STEINER
    g = GeoGraph.build(xy, kind, edges)
    tree = shortest_path_tree(g, instance.source_index)
    tree = _prune_steiner_leaves(tree)

    stretch = root_stretch(tree, instance)
    report = BuildReport(
        mode=mode,
        eps=eps,
        threads=threads,
        tiles=[o.stats for o in outs],
        n_steiner=int(np.sum(tree.kind == KIND_STEINER)),
        union_graph_weight=g.total_weight(),
        tree_weight=tree.weight(),
        max_stretch=stretch,
        wall_time_s=time.perf_counter() - t0,
    )
    return tree, report


def _prune_steiner_leaves(tree: RootedTree) -> RootedTree:
    """Iteratively remove Steiner leaves; input points and the source stay."""
    m = tree.n_vertices
    child_count = np.zeros(m, dtype=np.int64)
    np.add.at(child_count, tree.parent[tree.parent >= 0], 1)
    keep = np.ones(m, dtype=bool)
    stack = [
        v for v in range(m)
        if tree.kind[v] == KIND_STEINER and child_count[v] == 0
    ]
    while stack:
        v = stack.pop()
        keep[v] = False
        p = int(tree.parent[v])
        child_count[p] -= 1
        if child_count[p] == 0 and tree.kind[p] == KIND_STEINER and keep[p]:
            stack.append(p)
    if keep.all():
        return tree
    new_id = np.cumsum(keep) - 1
    parent = tree.parent[keep].copy()
    pos = parent >= 0
    parent[pos] = new_id[parent[pos]]
    return RootedTree(
        tree.xy[keep],
        tree.kind[keep],
        int(new_id[tree.root]),
        parent,
        tree.root_dist[keep],
    )
