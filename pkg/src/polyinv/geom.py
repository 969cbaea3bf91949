"""Inversive geometry primitives in R^3.

Points are plain ``numpy`` arrays of shape ``(3,)``.  Every degeneracy
predicate goes through one tolerance ``eps`` which is applied as an
absolute-plus-relative bound, ``eps * (1 + scale)``, where ``scale`` is the
size of the objects being compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import CenterHit, PlanesMeetInLine

DEFAULT_EPS = 1e-9


def as_point(x) -> np.ndarray:
    p = np.asarray(x, dtype=float).reshape(3)
    if not np.all(np.isfinite(p)):
        raise ValueError(f"non-finite point {p!r}")
    return p


def tol(eps: float, *scales: float) -> float:
    return eps * (1.0 + max((abs(s) for s in scales), default=0.0))


def canonical_direction(v: np.ndarray) -> np.ndarray:
    """Unit vector with its first clearly nonzero coordinate positive."""
    v = np.asarray(v, dtype=float)
    v = v / np.linalg.norm(v)
    for c in v:
        if abs(c) > 1e-12:
            return v if c > 0 else -v
    return v


def orthonormal_frame(n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Two unit vectors spanning the plane orthogonal to unit vector ``n``."""
    a = np.zeros(3)
    a[np.argmin(np.abs(n))] = 1.0
    e1 = np.cross(n, a)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(n, e1)


# ---------------------------------------------------------------- value types


@dataclass(frozen=True, eq=False)
class InversionSpec:
    center: np.ndarray
    radius: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not self.radius > 0:
            raise ValueError("inversion radius must be positive")


@dataclass(frozen=True, eq=False)
class MobiusMap:
    """Composition of sphere inversions, applied first to last."""

    inversions: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "inversions", tuple(self.inversions))

    def __len__(self):
        return len(self.inversions)


@dataclass(frozen=True, eq=False)
class Sphere:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not self.radius > 0:
            raise ValueError("sphere radius must be positive")

    def signed_distance(self, x) -> float:
        return float(np.linalg.norm(np.asarray(x) - self.center) - self.radius)

    @property
    def scale(self) -> float:
        return self.radius + float(np.abs(self.center).max())

    def __repr__(self):
        c = ", ".join(f"{v:.6g}" for v in self.center)
        return f"Sphere(center=({c}), radius={self.radius:.6g})"


@dataclass(frozen=True, eq=False)
class Plane:
    """Points ``x`` with ``<normal, x> = offset``; normal stored canonically."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float).reshape(3)
        length = np.linalg.norm(n)
        if length == 0:
            raise ValueError("plane normal must be nonzero")
        n = n / length
        offset = self.offset / length
        c = canonical_direction(n)
        if not np.allclose(c, n):
            offset = -offset
        object.__setattr__(self, "normal", c)
        object.__setattr__(self, "offset", float(offset))

    def signed_distance(self, x) -> float:
        return float(np.dot(self.normal, x) - self.offset)

    @property
    def scale(self) -> float:
        return abs(self.offset)

    def __repr__(self):
        n = ", ".join(f"{v:.6g}" for v in self.normal)
        return f"Plane(normal=({n}), offset={self.offset:.6g})"


SphereOrPlane = Union[Sphere, Plane]


@dataclass(frozen=True, eq=False)
class Circle3:
    center: np.ndarray
    radius: float
    normal: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        object.__setattr__(self, "normal", canonical_direction(self.normal))
        if not self.radius > 0:
            raise ValueError("circle radius must be positive")

    @property
    def scale(self) -> float:
        return self.radius + float(np.abs(self.center).max())

    def point_at(self, angle) -> np.ndarray:
        e1, e2 = orthonormal_frame(self.normal)
        angle = np.asarray(angle, dtype=float)[..., None]
        return self.center + self.radius * (np.cos(angle) * e1 + np.sin(angle) * e2)

    def distance_to(self, x) -> float:
        """Euclidean distance from ``x`` to the circle."""
        d = np.asarray(x, dtype=float) - self.center
        h = float(np.dot(d, self.normal))
        rho = float(np.linalg.norm(d - h * self.normal))
        return float(np.hypot(h, rho - self.radius))

    def __repr__(self):
        c = ", ".join(f"{v:.6g}" for v in self.center)
        n = ", ".join(f"{v:.6g}" for v in self.normal)
        return f"Circle3(center=({c}), radius={self.radius:.6g}, normal=({n}))"


def same_surface(a: SphereOrPlane, b: SphereOrPlane, eps: float = DEFAULT_EPS) -> bool:
    if isinstance(a, Sphere) and isinstance(b, Sphere):
        t = tol(eps, a.scale, b.scale)
        return bool(np.linalg.norm(a.center - b.center) <= t and abs(a.radius - b.radius) <= t)
    if isinstance(a, Plane) and isinstance(b, Plane):
        t = tol(eps, a.scale, b.scale)
        return bool(np.linalg.norm(a.normal - b.normal) <= eps * 10 and abs(a.offset - b.offset) <= t)
    return False


def same_circle(a: Circle3, b: Circle3, eps: float = DEFAULT_EPS) -> bool:
    t = tol(eps, a.scale, b.scale)
    return bool(
        np.linalg.norm(a.center - b.center) <= t
        and abs(a.radius - b.radius) <= t
        and np.linalg.norm(a.normal - b.normal) <= t / max(a.radius, 1e-300) + eps
    )


# ---------------------------------------------------------------- quadruples


@dataclass(frozen=True, eq=False)
class UniqueSphere:
    surface: SphereOrPlane


@dataclass(frozen=True, eq=False)
class Concyclic:
    circle: Circle3


@dataclass(frozen=True)
class Colinear:
    pass


@dataclass(frozen=True)
class Coincident:
    pass


QuadrupleShape = Union[UniqueSphere, Concyclic, Colinear, Coincident]


# ---------------------------------------------------------------- intersections


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Equal:
    pass


@dataclass(frozen=True, eq=False)
class TangentPoint:
    point: np.ndarray


@dataclass(frozen=True, eq=False)
class OnePoint:
    point: np.ndarray


@dataclass(frozen=True, eq=False)
class TwoPoints:
    first: np.ndarray
    second: np.ndarray

    @property
    def points(self):
        return (self.first, self.second)


@dataclass(frozen=True)
class Contained:
    pass


# ---------------------------------------------------------------- inversion


def invert_point(spec: InversionSpec, x, eps: float = DEFAULT_EPS) -> np.ndarray:
    d = as_point(x) - spec.center
    dist2 = float(np.dot(d, d))
    if np.sqrt(dist2) <= tol(eps, spec.radius):
        raise CenterHit(0)
    return spec.center + (spec.radius**2 / dist2) * d


def invert_points(spec: InversionSpec, xs, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Vectorised :func:`invert_point` over an ``(n, 3)`` array."""
    xs = np.asarray(xs, dtype=float)
    d = xs - spec.center
    dist2 = np.einsum("ij,ij->i", d, d)
    bad = np.flatnonzero(np.sqrt(dist2) <= tol(eps, spec.radius))
    if bad.size:
        raise CenterHit(int(bad[0]))
    return spec.center + (spec.radius**2 / dist2)[:, None] * d


def apply_mobius(mu: MobiusMap, x, eps: float = DEFAULT_EPS) -> np.ndarray:
    y = as_point(x)
    for k, spec in enumerate(mu.inversions):
        try:
            y = invert_point(spec, y, eps)
        except CenterHit:
            raise CenterHit(k, f"intermediate image hits the center of inversion {k}") from None
    return y


def apply_mobius_points(mu: MobiusMap, xs, eps: float = DEFAULT_EPS) -> np.ndarray:
    ys = np.asarray(xs, dtype=float)
    for k, spec in enumerate(mu.inversions):
        try:
            ys = invert_points(spec, ys, eps)
        except CenterHit as err:
            raise CenterHit(k, f"image of point {err.index} hits the center of inversion {k}") from None
    return ys


def invert_extended(spec: InversionSpec, x):
    """Inversion on R^3 plus a point at infinity, represented by ``None``."""
    if x is None:
        return spec.center.copy()
    d = x - spec.center
    dist2 = float(np.dot(d, d))
    if dist2 == 0.0:
        return None
    return spec.center + (spec.radius**2 / dist2) * d


def pole(mu: MobiusMap):
    """The point sent to infinity by ``mu``; ``None`` if infinity is fixed."""
    if not mu.inversions:
        return None
    q = mu.inversions[-1].center.copy()
    for spec in reversed(mu.inversions[:-1]):
        q = invert_extended(spec, q)
    return q


def invert_surface(spec: InversionSpec, s: SphereOrPlane, eps: float = DEFAULT_EPS) -> SphereOrPlane:
    """Image of a sphere or plane under inversion in ``spec``."""
    q, k2 = spec.center, spec.radius**2
    if isinstance(s, Sphere):
        d = s.center - q
        power = float(np.dot(d, d)) - s.radius**2
        if abs(power) <= tol(eps, s.radius**2):
            # sphere through the center maps to a plane
            n = d / np.linalg.norm(d)
            foot = q + 2.0 * s.radius * n
            return Plane(n, float(np.dot(n, invert_point(spec, foot, eps))))
        return Sphere(q + (k2 / power) * d, k2 * s.radius / abs(power))
    h = s.offset - float(np.dot(s.normal, q))
    if abs(h) <= tol(eps, s.offset):
        return s
    far = q + (k2 / h) * s.normal
    return Sphere((q + far) / 2.0, k2 / (2.0 * abs(h)))


# ---------------------------------------------------------------- four points


def circle_through(a, b, c) -> Circle3:
    """Circumcircle of three non-colinear points."""
    a, b, c = (np.asarray(p, dtype=float) for p in (a, b, c))
    u, v = b - a, c - a
    w = np.cross(u, v)
    w2 = float(np.dot(w, w))
    offset = (np.dot(u, u) * np.cross(v, w) + np.dot(v, v) * np.cross(w, u)) / (2.0 * w2)
    return Circle3(a + offset, float(np.linalg.norm(offset)), w)


def _distinct(points, t):
    out = []
    for p in points:
        if all(np.linalg.norm(p - q) > t for q in out):
            out.append(p)
    return out


def shape_of_quadruple(w, x, y, z, eps: float = DEFAULT_EPS) -> QuadrupleShape:
    """Classify four points by the smallest round sphere/plane/circle they span."""
    pts = np.array([as_point(p) for p in (w, x, y, z)])
    centroid = pts.mean(axis=0)
    rel = pts - centroid
    spread = float(np.linalg.norm(rel, axis=1).max())
    t = tol(eps, spread)
    distinct = _distinct(list(pts), t)
    if len(distinct) < 3:
        return Coincident()

    q = rel / spread
    sv = np.linalg.svd(q, compute_uv=False)
    if sv[1] <= eps:
        return Colinear()

    if sv[2] <= eps:
        # coplanar: pick the best-conditioned triangle for the circumcircle
        dq = [(p - centroid) / spread for p in distinct]
        best, best_area = None, -1.0
        for i in range(len(dq)):
            for j in range(i + 1, len(dq)):
                for k in range(j + 1, len(dq)):
                    area = np.linalg.norm(np.cross(dq[j] - dq[i], dq[k] - dq[i]))
                    if area > best_area:
                        best, best_area = (i, j, k), area
        circ = circle_through(*(dq[i] for i in best))
        if all(abs(np.linalg.norm(p - circ.center) - circ.radius) <= eps * (1.0 + circ.radius) for p in dq):
            return Concyclic(Circle3(centroid + spread * circ.center, spread * circ.radius, circ.normal))
        _, _, vt = np.linalg.svd(q)
        n = vt[2]
        return UniqueSphere(Plane(n, float(np.dot(n, centroid))))

    # sphere: subtract the first sphere equation from the others
    a = 2.0 * (q[1:] - q[0])
    b = np.einsum("ij,ij->i", q[1:], q[1:]) - np.dot(q[0], q[0])
    c = np.linalg.solve(a, b)
    r = float(np.linalg.norm(q[0] - c))
    return UniqueSphere(Sphere(centroid + spread * c, spread * r))


# ---------------------------------------------------------------- intersections


def intersect_spheres(a: SphereOrPlane, b: SphereOrPlane, eps: float = DEFAULT_EPS):
    """Intersection of two spheres/planes: Empty, TangentPoint, Circle3 or Equal."""
    if isinstance(a, Plane) and isinstance(b, Plane):
        if abs(abs(float(np.dot(a.normal, b.normal))) - 1.0) <= eps:
            return Equal() if same_surface(a, b, eps) else Empty()
        raise PlanesMeetInLine("two non-parallel planes meet in a line")
    if isinstance(a, Plane):
        a, b = b, a
    if isinstance(b, Plane):
        h = b.signed_distance(a.center)
        t = tol(eps, a.scale, b.scale)
        foot = a.center - h * b.normal
        if abs(h) > a.radius + t:
            return Empty()
        if abs(abs(h) - a.radius) <= t:
            return TangentPoint(foot)
        return Circle3(foot, float(np.sqrt(a.radius**2 - h * h)), b.normal)

    t = tol(eps, a.scale, b.scale)
    delta = b.center - a.center
    d = float(np.linalg.norm(delta))
    if d <= t:
        return Equal() if abs(a.radius - b.radius) <= t else Empty()
    u = delta / d
    if d > a.radius + b.radius + t or d < abs(a.radius - b.radius) - t:
        return Empty()
    if abs(d - (a.radius + b.radius)) <= t:
        return TangentPoint(a.center + a.radius * u)
    if abs(d - abs(a.radius - b.radius)) <= t:
        side = 1.0 if a.radius > b.radius else -1.0
        return TangentPoint(a.center + side * a.radius * u)
    along = (d * d + a.radius**2 - b.radius**2) / (2.0 * d)
    rho2 = a.radius**2 - along**2
    if rho2 <= 0:
        return TangentPoint(a.center + along * u)
    return Circle3(a.center + along * u, float(np.sqrt(rho2)), u)


def _coplanar_circles(c: Circle3, center, radius, t):
    """Intersect ``c`` with a circle of the same plane."""
    delta = center - c.center
    delta = delta - np.dot(delta, c.normal) * c.normal
    d = float(np.linalg.norm(delta))
    if d <= t:
        return Contained() if abs(radius - c.radius) <= t else Empty()
    if d > c.radius + radius + t or d < abs(c.radius - radius) - t:
        return Empty()
    u = delta / d
    along = (d * d + c.radius**2 - radius**2) / (2.0 * d)
    half2 = c.radius**2 - along**2
    if abs(d - (c.radius + radius)) <= t or abs(d - abs(c.radius - radius)) <= t or half2 <= 0:
        return OnePoint(c.center + np.clip(along, -c.radius, c.radius) * u)
    w = np.cross(c.normal, u)
    mid = c.center + along * u
    half = float(np.sqrt(half2))
    return TwoPoints(mid + half * w, mid - half * w)


def intersect_circle_sphere(c: Circle3, s: SphereOrPlane, eps: float = DEFAULT_EPS):
    """Intersection of a circle with a sphere/plane: Empty, OnePoint, TwoPoints or Contained."""
    t = tol(eps, c.scale, s.scale)
    if isinstance(s, Sphere):
        h = float(np.dot(s.center - c.center, c.normal))
        if abs(h) > s.radius + t:
            return Empty()
        foot = s.center - h * c.normal
        if abs(abs(h) - s.radius) <= t:
            if abs(np.linalg.norm(foot - c.center) - c.radius) <= t:
                return OnePoint(foot)
            return Empty()
        return _coplanar_circles(c, foot, float(np.sqrt(s.radius**2 - h * h)), t)

    m = s.normal
    along = float(np.dot(m, c.normal))
    if abs(abs(along) - 1.0) <= eps:
        return Contained() if abs(s.signed_distance(c.center)) <= t else Empty()
    v = m - along * c.normal
    vlen = float(np.linalg.norm(v))
    v /= vlen
    dist = (s.offset - float(np.dot(m, c.center))) / vlen
    if abs(dist) > c.radius + t:
        return Empty()
    foot = c.center + dist * v
    if abs(abs(dist) - c.radius) <= t:
        return OnePoint(foot)
    w = np.cross(c.normal, v)
    half = float(np.sqrt(c.radius**2 - dist * dist))
    return TwoPoints(foot + half * w, foot - half * w)
