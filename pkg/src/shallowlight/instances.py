"""Deterministic instance generators.

Five families: `circle` (evenly spaced points on the unit circle, the source
being the point at angle 0), `comb` (bottom edge of the unit square plus k
vertical unit teeth, source at (2,0)), `cnet-comb` (a point set that is itself
a centered eps-net: bottom edge of [0,1] plus a brush of short teeth over
[0, sqrt(eps)], all spaced 2.5*eps), `sector-lb` (bottom edge plus teeth of
height sqrt(eps) at x = j*sqrt(eps), the certificate lower-bound layout), and
`uniform` (seeded random points in the unit square, source at (2,0)).

All generators are pure functions of (kind, parameters, seed); the random
family uses a hand-rolled splitmix64 so outputs are bit-stable across library
versions. Grid families snap shared coordinates to identical float expressions
and deduplicate exact coincidences (tooth feet landing on bottom samples).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cnet import build_cnet

_M64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(seed: int, count: int) -> list[int]:
    """First `count` outputs of the splitmix64 generator for this seed."""
    state = seed & _M64
    out = []
    for _ in range(count):
        state = (state + _GAMMA) & _M64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
        out.append(z ^ (z >> 31))
    return out


def _unit_floats(seed: int, count: int) -> list[float]:
    # 53-bit mantissa draw in [0, 1)
    return [(z >> 11) * 2.0**-53 for z in splitmix64(seed, count)]


@dataclass
class Instance:
    """A planar point set with a designated source and a stretch parameter."""

    points: np.ndarray  # (n, 2) float64
    source_index: int
    eps: float

    def __post_init__(self):
        self.points = np.ascontiguousarray(
            np.asarray(self.points, dtype=np.float64).reshape(-1, 2)
        )
        n = self.points.shape[0]
        if not np.all(np.isfinite(self.points)):
            raise ValueError("Instance: non-finite coordinate")
        if not 0 <= self.source_index < n:
            raise ValueError("Instance: source index out of range")
        if not 0.0 < self.eps < 1.0:
            raise ValueError(f"Instance: eps={self.eps} outside (0, 1)")
        if np.unique(self.points, axis=0).shape[0] != n:
            raise ValueError("Instance: duplicate points")

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def source(self) -> tuple[float, float]:
        p = self.points[self.source_index]
        return (float(p[0]), float(p[1]))


def _dedup(rows: list[tuple[float, float]]) -> list[tuple[float, float]]:
    seen = set()
    out = []
    for q in rows:
        if q not in seen:
            seen.add(q)
            out.append(q)
    return out


def _grid(step: float, limit: float) -> list[float]:
    """Multiples i*step for i = 0.. while i*step <= limit (exact float products)."""
    out = []
    i = 0
    while True:
        x = i * step
        if x > limit:
            break
        out.append(x)
        i += 1
    return out


KINDS = ("circle", "comb", "cnet-comb", "sector-lb", "uniform")


def generate(kind: str, eps: float, n: int | None = None, k: int | None = None,
             delta: float | None = None, seed: int = 0) -> Instance:
    """Build one instance. The source is always index 0.

    circle: n points (default ceil(1/eps)) at angles 2*pi*j/n on the unit circle.
    comb: k teeth (default 4) at x=(j+1/2)/k; sample spacing delta (default
        min(eps, 1/(2k))) must satisfy delta <= 1/(2k) so the MST is the comb.
    cnet-comb: all spacings fixed at 2.5*eps; teeth cover x,y in [0, sqrt(eps)];
        the output is verified to be a centered eps-net.
    sector-lb: teeth of height sqrt(eps) at every x = j*sqrt(eps), sample
        spacing delta (default eps).
    uniform: n required; points drawn from [0,1)^2 via splitmix64(seed).
    """
    if not 0.0 < eps < 1.0:
        raise ValueError(f"generate: eps={eps} outside (0, 1)")

    if kind == "circle":
        m = math.ceil(1.0 / eps) if n is None else int(n)
        if m < 2:
            raise ValueError("generate: circle needs at least 2 points")
        ang = 2.0 * math.pi * np.arange(m) / m
        pts = np.stack([np.cos(ang), np.sin(ang)], axis=1)
        return Instance(pts, 0, eps)

    if kind == "comb":
        k = 4 if k is None else int(k)
        if k < 1:
            raise ValueError("generate: comb needs k >= 1")
        if delta is None:
            delta = min(eps, 1.0 / (2 * k))
        if not 0.0 < delta <= 1.0 / (2 * k):
            raise ValueError(
                f"generate: comb spacing delta={delta} violates delta <= 1/(2k)={1.0/(2*k)}"
            )
        rows = [(2.0, 0.0)]
        rows += [(x, 0.0) for x in _grid(delta, 1.0)]
        for j in range(k):
            tx = (j + 0.5) / k
            rows += [(tx, y) for y in _grid(delta, 1.0)]
        return Instance(np.array(_dedup(rows)), 0, eps)

    if kind == "cnet-comb":
        # 2.5*eps spacing keeps pairwise gaps above eps*max d(.,s) = eps*sqrt(4+eps)
        step = 2.5 * eps
        root_eps = math.sqrt(eps)
        rows = [(2.0, 0.0)]
        rows += [(x, 0.0) for x in _grid(step, 1.0)]
        for tx in _grid(step, root_eps):
            rows += [(tx, y) for y in _grid(step, root_eps)]
        inst = Instance(np.array(_dedup(rows)), 0, eps)
        _check_is_cnet(inst)
        return inst

    if kind == "sector-lb":
        delta = eps if delta is None else float(delta)
        if delta <= 0.0:
            raise ValueError("generate: sector-lb needs delta > 0")
        root_eps = math.sqrt(eps)
        rows = [(2.0, 0.0)]
        rows += [(x, 0.0) for x in _grid(delta, 1.0)]
        for tx in _grid(root_eps, 1.0):
            rows += [(tx, y) for y in _grid(delta, root_eps)]
        return Instance(np.array(_dedup(rows)), 0, eps)

    if kind == "uniform":
        if n is None:
            raise ValueError("generate: uniform needs n")
        n = int(n)
        if n < 1:
            raise ValueError("generate: uniform needs n >= 1")
        u = _unit_floats(seed, 2 * n)
        pts = [(2.0, 0.0)] + [(u[2 * i], u[2 * i + 1]) for i in range(n)]
        return Instance(np.array(_dedup(pts)), 0, eps)

    raise ValueError(f"generate: unknown kind {kind!r}")


def _check_is_cnet(inst: Instance) -> None:
    """The instance must itself be a centered eps-net: the greedy keeps every point."""
    mask = np.arange(inst.n) != inst.source_index
    cn = build_cnet(inst.points[mask], inst.source, inst.eps)
    if len(cn.net) != int(mask.sum()):
        raise ValueError(
            "generate: cnet-comb layout failed the centered-net separation check"
        )
