"""Polygonal knots, polygonal inversion and the circle-arc image."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import CenterHit, DegenerateArc, DegeneratePolygon, ParseError
from .geom import (
    DEFAULT_EPS,
    Circle3,
    InversionSpec,
    MobiusMap,
    apply_mobius_points,
    circle_through,
    invert_points,
    orthonormal_frame,
    tol,
)

# Vertex matrix of the 7-segment figure-eight used throughout the examples.
FIGURE_EIGHT_7 = np.array(
    [
        [-1, -13, 24],
        [-9, 24, 19],
        [-27, -15, -20],
        [45, 3, -2],
        [-23, 7, 34],
        [30, -15, -37],
        [-16, 10, -17],
    ],
    dtype=float,
)


@dataclass(frozen=True, eq=False)
class Polygon:
    """Closed polygon; edge ``i`` joins vertex ``i`` to vertex ``(i + 1) % n``."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3:
            raise DegeneratePolygon(f"expected an (n, 3) vertex array, got shape {v.shape}")
        if len(v) < 3:
            raise DegeneratePolygon(f"a polygon needs at least 3 vertices, got {len(v)}")
        if not np.all(np.isfinite(v)):
            raise DegeneratePolygon("non-finite vertex coordinates")
        steps = np.linalg.norm(v - np.roll(v, -1, axis=0), axis=1)
        t = tol(DEFAULT_EPS, float(np.abs(v).max()))
        short = np.flatnonzero(steps <= t)
        if short.size:
            i = int(short[0])
            raise DegeneratePolygon(f"vertices {i} and {(i + 1) % len(v)} coincide")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    def __len__(self):
        return len(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        return self.vertices[i], self.vertices[(i + 1) % self.n]

    def edges(self) -> np.ndarray:
        """``(n, 2, 3)`` array of edge endpoints."""
        return np.stack([self.vertices, np.roll(self.vertices, -1, axis=0)], axis=1)

    @property
    def diameter(self) -> float:
        v = self.vertices
        return float(np.linalg.norm(v.max(axis=0) - v.min(axis=0)))

    def reflected(self) -> "Polygon":
        """Mirror image in the plane x = 0."""
        return Polygon(self.vertices * np.array([-1.0, 1.0, 1.0]))

    def relabeled(self, shift: int) -> "Polygon":
        return Polygon(np.roll(self.vertices, -shift, axis=0))

    def non_adjacent_pairs(self):
        """Unordered pairs ``(i, j)``, ``i < j``, of edges sharing no vertex."""
        n = self.n
        for i in range(n):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                yield i, j


# ---------------------------------------------------------------- inversion


def polygonal_inversion(K: Polygon, spec: InversionSpec, eps: float = DEFAULT_EPS) -> Polygon:
    """Invert the vertices of ``K`` and reconnect them with straight edges."""
    try:
        return Polygon(invert_points(spec, K.vertices, eps))
    except CenterHit as err:
        raise CenterHit(err.index, f"vertex {err.index} lies on the inversion center") from None


def mobius_polygon(K: Polygon, mu: MobiusMap, eps: float = DEFAULT_EPS) -> Polygon:
    return Polygon(apply_mobius_points(mu, K.vertices, eps))


@dataclass(frozen=True, eq=False)
class Arc:
    """Circular arc from ``start`` sweeping ``sweep`` radians about ``circle.normal``.

    ``circle`` is ``None`` for a straight segment (edge colinear with the center).
    """

    start: np.ndarray
    end: np.ndarray
    circle: Optional[Circle3]
    start_angle: float = 0.0
    sweep: float = 0.0

    @property
    def degenerate(self) -> bool:
        return self.circle is None

    def sample(self, count: int) -> np.ndarray:
        t = np.linspace(0.0, 1.0, count)
        if self.circle is None:
            return self.start + t[:, None] * (self.end - self.start)
        pts = self.circle.point_at(self.start_angle + t * self.sweep)
        pts[0], pts[-1] = self.start, self.end
        return pts

    def midpoint(self) -> np.ndarray:
        if self.circle is None:
            return (self.start + self.end) / 2.0
        return self.circle.point_at(self.start_angle + 0.5 * self.sweep)


@dataclass(frozen=True, eq=False)
class ArcPolygon:
    arcs: tuple

    def sample(self, samples_per_arc: int = 64) -> np.ndarray:
        """Closed polyline through all arcs, without repeating shared endpoints."""
        return np.concatenate([a.sample(samples_per_arc + 1)[:-1] for a in self.arcs])

    def polylines(self, samples_per_arc: int = 64) -> list[np.ndarray]:
        return [a.sample(samples_per_arc + 1) for a in self.arcs]


def _angle(circle: Circle3, x) -> float:
    e1, e2 = orthonormal_frame(circle.normal)
    d = np.asarray(x) - circle.center
    return float(np.arctan2(np.dot(d, e2), np.dot(d, e1)))


def circle_arc_image(K: Polygon, spec: InversionSpec, eps: float = DEFAULT_EPS) -> ArcPolygon:
    """Replace each edge by the arc through its endpoints and the center, away from the center."""
    p = spec.center
    arcs = []
    for i in range(K.n):
        x, y = K.edge(i)
        u, w = y - x, p - x
        t = tol(eps, K.diameter, float(np.linalg.norm(w)))
        if np.linalg.norm(np.cross(u, w)) <= t * np.linalg.norm(u):
            s = float(np.dot(w, u) / np.dot(u, u))
            if -eps <= s <= 1.0 + eps:
                raise DegenerateArc(i)
            arcs.append(Arc(x.copy(), y.copy(), None))
            continue
        circle = circle_through(x, y, p)
        a0, a1, ap = _angle(circle, x), _angle(circle, y), _angle(circle, p)
        ccw = (a1 - a0) % (2.0 * np.pi)
        # keep the counter-clockwise arc unless p lies on it
        sweep = ccw if (ap - a0) % (2.0 * np.pi) > ccw else ccw - 2.0 * np.pi
        arcs.append(Arc(x.copy(), y.copy(), circle, a0, sweep))
    return ArcPolygon(tuple(arcs))


def arc_deviation(A: ArcPolygon, samples_per_arc: int = 64) -> float:
    """Largest distance of an arc sample from its chord."""
    worst = 0.0
    for arc in A.arcs:
        pts = arc.sample(samples_per_arc + 1)
        worst = max(worst, float(segment_point_distances(arc.start, arc.end, pts).max()))
    return worst


# ---------------------------------------------------------------- singularities


@dataclass(frozen=True, eq=False)
class SingularityWitness:
    edges: tuple[int, int]
    point: np.ndarray
    gap: float


def segment_point_distances(a, b, pts) -> np.ndarray:
    d = b - a
    t = np.clip((pts - a) @ d / np.dot(d, d), 0.0, 1.0)
    return np.linalg.norm(pts - (a + t[:, None] * d), axis=1)


def closest_points(p1, q1, p2, q2) -> tuple[np.ndarray, np.ndarray]:
    """Closest points between segments [p1, q1] and [p2, q2]."""
    d1, d2, r = q1 - p1, q2 - p2, p1 - p2
    a, e, f = np.dot(d1, d1), np.dot(d2, d2), np.dot(d2, r)
    c, b = np.dot(d1, r), np.dot(d1, d2)
    denom = a * e - b * b
    s = np.clip((b * f - c * e) / denom, 0.0, 1.0) if denom > 1e-300 * a * e else 0.0
    t = (b * s + f) / e
    if t < 0.0:
        t, s = 0.0, np.clip(-c / a, 0.0, 1.0)
    elif t > 1.0:
        t, s = 1.0, np.clip((b - c) / a, 0.0, 1.0)
    return p1 + s * d1, p2 + t * d2


def min_gap(K: Polygon) -> Optional[SingularityWitness]:
    """Closest pair of non-adjacent edges (``None`` for triangles)."""
    best = None
    for i, j in K.non_adjacent_pairs():
        a, b = closest_points(*K.edge(i), *K.edge(j))
        gap = float(np.linalg.norm(a - b))
        if best is None or gap < best.gap:
            best = SingularityWitness((i, j), (a + b) / 2.0, gap)
    return best


def find_singularity(K: Polygon, eps: float = DEFAULT_EPS) -> Optional[SingularityWitness]:
    w = min_gap(K)
    if w is not None and w.gap <= tol(eps, K.diameter):
        return w
    return None


def relative_gap(K: Polygon) -> float:
    """Smallest non-adjacent edge gap as a fraction of the polygon diameter."""
    w = min_gap(K)
    return np.inf if w is None else w.gap / K.diameter


# ---------------------------------------------------------------- file I/O


def parse_polygon(text: str) -> Polygon:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ParseError(f"expected 3 coordinates, got {len(fields)}", lineno)
        try:
            rows.append([float(f) for f in fields])
        except ValueError:
            raise ParseError(f"invalid number in {line!r}", lineno) from None
    return Polygon(np.array(rows, dtype=float).reshape(-1, 3))


def format_polygon(K: Polygon) -> str:
    return "".join(" ".join(f"{c:.17g}" for c in v) + "\n" for v in K.vertices)


def read_polygon(path) -> Polygon:
    return parse_polygon(Path(path).read_text(encoding="utf-8"))


def write_polygon(K: Polygon, path) -> None:
    Path(path).write_text(format_polygon(K), encoding="utf-8")


def figure_eight_7() -> Polygon:
    return Polygon(FIGURE_EIGHT_7)
