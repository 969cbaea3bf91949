"""Sphere systems of polygons and complementary-domain counts of sphere arrangements."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Optional, Union

import numpy as np
from scipy import ndimage

from .errors import NormalizationFailed, ParseError, Unresolved
from .geom import (
    DEFAULT_EPS,
    Circle3,
    Concyclic,
    Contained,
    Equal,
    InversionSpec,
    OnePoint,
    Plane,
    Sphere,
    SphereOrPlane,
    TangentPoint,
    TwoPoints,
    UniqueSphere,
    intersect_circle_sphere,
    intersect_spheres,
    invert_surface,
    same_circle,
    same_surface,
    shape_of_quadruple,
    tol,
)
from .homology import OrderComplex, homology_ranks
from .polygon import Polygon

# Points and circles produced by chains of intersections carry more rounding
# error than the inputs, so they are merged with a looser relative tolerance.
MERGE_EPS = 1e-7

VOXEL_CAP = 512


@dataclass
class SphereSystem:
    surfaces: list = field(default_factory=list)
    provenance: list = field(default_factory=list)  # edge pairs per surface
    skipped: list = field(default_factory=list)  # (edge pair, QuadrupleShape)

    def __len__(self):
        return len(self.surfaces)

    @property
    def spheres(self) -> list:
        return [s for s in self.surfaces if isinstance(s, Sphere)]

    @property
    def planes(self) -> list:
        return [s for s in self.surfaces if isinstance(s, Plane)]

    @property
    def scale(self) -> float:
        return max((s.scale for s in self.surfaces), default=1.0)

    def add(self, surface: SphereOrPlane, source=None, eps: float = DEFAULT_EPS) -> int:
        for k, other in enumerate(self.surfaces):
            if same_surface(surface, other, eps):
                if source is not None:
                    self.provenance[k].append(source)
                return k
        self.surfaces.append(surface)
        self.provenance.append([] if source is None else [source])
        return len(self.surfaces) - 1

    @classmethod
    def of(cls, surfaces, eps: float = DEFAULT_EPS) -> "SphereSystem":
        out = cls()
        for s in surfaces:
            out.add(s, eps=eps)
        return out

    def distance_to(self, x) -> float:
        """Unsigned distance from ``x`` to the nearest surface."""
        return min((abs(s.signed_distance(x)) for s in self.surfaces), default=np.inf)


def sphere_system(K: Polygon, eps: float = DEFAULT_EPS) -> SphereSystem:
    """Spheres/planes through the endpoints of each pair of non-adjacent edges."""
    out = SphereSystem()
    for i, j in K.non_adjacent_pairs():
        (w, x), (y, z) = K.edge(i), K.edge(j)
        shape = shape_of_quadruple(w, x, y, z, eps)
        if isinstance(shape, UniqueSphere):
            out.add(shape.surface, (i, j), eps)
        else:
            out.skipped.append(((i, j), shape))
    return out


def skipped_circles(sys: SphereSystem) -> list:
    return [shape.circle for _, shape in sys.skipped if isinstance(shape, Concyclic)]


# ---------------------------------------------------------------- text format


def parse_sphere_system(text: str) -> SphereSystem:
    out = SphereSystem()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, *fields = line.split()
        if kind not in ("S", "P") or len(fields) != 4:
            raise ParseError(f"expected 'S cx cy cz r' or 'P nx ny nz d', got {line!r}", lineno)
        try:
            a, b, c, d = (float(f) for f in fields)
        except ValueError:
            raise ParseError(f"invalid number in {line!r}", lineno) from None
        try:
            surface = Sphere((a, b, c), d) if kind == "S" else Plane((a, b, c), d)
        except ValueError as err:
            raise ParseError(str(err), lineno) from None
        out.add(surface)
    return out


def format_sphere_system(sys: SphereSystem) -> str:
    lines = []
    for s in sys.surfaces:
        if isinstance(s, Sphere):
            lines.append("S " + " ".join(f"{v:.17g}" for v in (*s.center, s.radius)))
        else:
            lines.append("P " + " ".join(f"{v:.17g}" for v in (*s.normal, s.offset)))
    return "\n".join(lines) + "\n"


def read_sphere_system(path) -> SphereSystem:
    return parse_sphere_system(Path(path).read_text(encoding="utf-8"))


def write_sphere_system(sys: SphereSystem, path) -> None:
    Path(path).write_text(format_sphere_system(sys), encoding="utf-8")


# ---------------------------------------------------------------- planes


def _reference_box(sys: SphereSystem) -> tuple[np.ndarray, np.ndarray]:
    pts = []
    for s in sys.surfaces:
        if isinstance(s, Sphere):
            pts += [s.center - s.radius, s.center + s.radius]
        else:
            pts.append(s.offset * s.normal)
    pts = np.array(pts) if pts else np.zeros((1, 3))
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    pad = max(float(np.max(hi - lo)), 1.0)
    return lo - pad, hi + pad


def planarity_normalize(sys: SphereSystem, seed: int = 0, eps: float = DEFAULT_EPS, max_draws: int = 10_000) -> SphereSystem:
    """Conjugate away planes by an inversion centred off every surface.

    Inversion is a homeomorphism of R^3 plus infinity; moving infinity into
    one region and removing the center from another leaves every region
    connected, so the number of complementary domains is unchanged.
    """
    if not sys.planes:
        return sys
    rng = np.random.default_rng(seed)
    lo, hi = _reference_box(sys)
    size = float(np.max(hi - lo))
    needed = 1e3 * tol(eps, sys.scale)
    best, best_dist = None, -1.0
    for draw in range(max_draws):
        q = rng.uniform(lo, hi)
        d = sys.distance_to(q)
        if d > best_dist:
            best, best_dist = q, d
        # take the best of a small batch once it is comfortably clear
        if draw >= 31 and best_dist > needed:
            break
    if best_dist <= needed:
        raise NormalizationFailed(f"no inversion center clear of all surfaces in {max_draws} draws")
    spec = InversionSpec(best, size)
    out = SphereSystem()
    for s, prov in zip(sys.surfaces, sys.provenance):
        k = out.add(invert_surface(spec, s, eps), eps=eps)
        out.provenance[k].extend(prov)
    out.skipped = list(sys.skipped)
    return out


# ---------------------------------------------------------------- poset


@dataclass(frozen=True, eq=False)
class PosetElement:
    kind: str  # "sphere", "circle", "point" or "top"
    geometry: Union[Sphere, Circle3, np.ndarray, None]

    @property
    def dim(self) -> int:
        return {"sphere": 2, "circle": 1, "point": 0, "top": -1}[self.kind]


@dataclass
class IntersectionPoset:
    """Components of intersections ordered by reverse inclusion.

    ``below[k]`` holds the indices of elements strictly below element ``k``,
    i.e. strictly containing it.  The last element is the top ``1``.
    """

    elements: list
    below: list

    @property
    def top(self) -> int:
        return len(self.elements) - 1

    def indices(self, kind: str) -> list:
        return [k for k, e in enumerate(self.elements) if e.kind == kind]

    def census(self) -> tuple[int, int, int]:
        return len(self.indices("sphere")), len(self.indices("circle")), len(self.indices("point"))

    def __len__(self):
        return len(self.elements)

    def order_complex(self, upper: Optional[int] = None) -> OrderComplex:
        """Order complex of ``P_{<upper}`` (default: everything below the top)."""
        upper = self.top if upper is None else upper
        members = sorted(self.below[upper])
        keep = set(members)
        edges, triangles = [], []
        for k in members:
            lower = sorted(self.below[k] & keep)
            edges += [(j, k) for j in lower]
            for j in lower:
                triangles += [(i, j, k) for i in sorted(self.below[j] & keep)]
        return OrderComplex(members, edges, triangles)


def _add_point(points: list, p: np.ndarray, t: float) -> int:
    for k, q in enumerate(points):
        if np.linalg.norm(p - q) <= t:
            return k
    points.append(p)
    return len(points) - 1


def build_intersection_poset(sys: SphereSystem, eps: float = DEFAULT_EPS, merge_eps: float = MERGE_EPS) -> IntersectionPoset:
    """Intersection poset of an all-sphere system (normalize planes away first)."""
    spheres = list(sys.surfaces)
    if any(isinstance(s, Plane) for s in spheres):
        raise ValueError("normalize planes away before building the poset")
    scale = max((s.scale for s in spheres), default=1.0)
    t = merge_eps * (1.0 + scale)

    circles: list = []
    points: list = []
    for a in range(len(spheres)):
        for b in range(a + 1, len(spheres)):
            meet = intersect_spheres(spheres[a], spheres[b], eps)
            if isinstance(meet, Circle3):
                if not any(same_circle(meet, c, merge_eps) for c in circles):
                    circles.append(meet)
            elif isinstance(meet, TangentPoint):
                _add_point(points, meet.point, t)
            elif isinstance(meet, Equal):
                raise ValueError(f"surfaces {a} and {b} coincide")

    circle_spheres = []
    for c in circles:
        owners = set()
        for k, s in enumerate(spheres):
            meet = intersect_circle_sphere(c, s, eps)
            if isinstance(meet, Contained) or _circle_on_sphere(c, s, t):
                owners.add(k)
            elif isinstance(meet, OnePoint):
                _add_point(points, meet.point, t)
            elif isinstance(meet, TwoPoints):
                for p in meet.points:
                    _add_point(points, p, t)
        circle_spheres.append(owners)

    n_s, n_c, n_p = len(spheres), len(circles), len(points)
    elements = [PosetElement("sphere", s) for s in spheres]
    elements += [PosetElement("circle", c) for c in circles]
    elements += [PosetElement("point", p) for p in points]
    below: list = [set() for _ in range(n_s)]
    below += [set(owners) for owners in circle_spheres]
    for p in points:
        on_s = {k for k, s in enumerate(spheres) if abs(s.signed_distance(p)) <= t}
        on_c = {n_s + k for k, c in enumerate(circles) if c.distance_to(p) <= t}
        # close under transitivity: a point on a circle lies on the circle's spheres
        for k in on_c:
            on_s |= below[k]
        below.append(on_s | on_c)
    elements.append(PosetElement("top", None))
    below.append(set(range(n_s + n_c + n_p)))
    return IntersectionPoset(elements, below)


def _circle_on_sphere(c: Circle3, s: Sphere, t: float) -> bool:
    probes = c.point_at(np.array([0.0, 2.0, 4.0]))
    return all(abs(s.signed_distance(p)) <= t for p in probes)


# ---------------------------------------------------------------- counting


def complement_cohomology_rank(P: IntersectionPoset, degree: int = 0) -> int:
    """Rank of the reduced cohomology of the complement in the given degree.

    Sum over elements of nonzero dimension of the reduced Betti number of the
    order complex strictly below, in degree ``1 - dim - degree``.  The top
    element has dimension -1.
    """
    total = 0
    for k, e in enumerate(P.elements):
        if e.dim == 0:
            continue
        index = 1 - e.dim - degree
        if index < -1 or index > 2:
            continue
        total += homology_ranks(P.order_complex(k))[index]
    return total


def region_count_exact(sys: SphereSystem, eps: float = DEFAULT_EPS, seed: int = 0) -> int:
    """Number of connected components of the complement of the system."""
    if not sys.surfaces:
        return 1
    normal = planarity_normalize(sys, seed=seed, eps=eps)
    return 1 + complement_cohomology_rank(build_intersection_poset(normal, eps))


def region_count_upper(m: int) -> int:
    if m < 0:
        raise ValueError("m must be non-negative")
    return 2 * comb(m, 3) + 2 * m if m else 1


def circles_on_sphere_bound(k: int) -> int:
    if k < 0:
        raise ValueError("k must be non-negative")
    return k * k - k + 2 if k else 1


def euler_characteristic_generic(m: int) -> int:
    if m < 1:
        raise ValueError("m must be positive")
    return 2 * comb(m, 3) - comb(m, 2) + m


# ---------------------------------------------------------------- voxel oracle


def voxel_region_count(sys: SphereSystem, resolution: int, chunk: int = 32) -> int:
    """Count complementary regions by flood-filling a voxel grid.

    Voxels whose centers lie within one voxel diagonal of a sphere are left
    out of the fill.  A component is counted only if one of its voxels is at
    least two diagonals clear of every sphere; this drops the isolated voxels
    left in thin wedges where spheres meet at shallow angles.
    """
    spheres = list(sys.surfaces)
    if any(isinstance(s, Plane) for s in spheres):
        raise ValueError("voxel counting needs an all-sphere system")
    if resolution < 32:
        raise ValueError("resolution must be at least 32")
    if not spheres:
        return 1
    centers = np.array([s.center for s in spheres])
    radii = np.array([s.radius for s in spheres])
    margin = 2.0 * radii.max()
    lo = (centers - radii[:, None]).min(axis=0) - margin
    hi = (centers + radii[:, None]).max(axis=0) + margin
    h = float(np.max(hi - lo)) / resolution
    shape = np.ceil((hi - lo) / h).astype(int)
    # float32 halves memory traffic; voxel-scale decisions do not need more
    axes = [(lo[k] + h * (np.arange(shape[k]) + 0.5)).astype(np.float32) for k in range(3)]
    clearance = np.full(shape, np.inf, dtype=np.float32)
    for c, r in zip(centers.astype(np.float32), radii.astype(np.float32)):
        yz = (axes[1][:, None] - c[1]) ** 2 + (axes[2][None, :] - c[2]) ** 2
        for start in range(0, shape[0], chunk):
            x2 = ((axes[0][start : start + chunk] - c[0]) ** 2)[:, None, None]
            dist = np.sqrt(x2 + yz[None])
            dist -= r
            np.abs(dist, out=dist)
            block = clearance[start : start + chunk]
            np.minimum(block, dist, out=block)
    band = h * np.sqrt(3.0)
    clear = clearance > band
    labels, count = ndimage.label(clear)
    if count == 0:
        return 1
    real = set(np.unique(labels[clearance >= 2.0 * band]).tolist()) - {0}
    edge = np.zeros_like(clear)
    edge[[0, -1], :, :] = edge[:, [0, -1], :] = edge[:, :, [0, -1]] = True
    outer = set(np.unique(labels[edge & clear]).tolist()) - {0}
    return len(real - outer) + 1


def voxel_region_count_stable(sys: SphereSystem, start: int = 32, cap: int = VOXEL_CAP) -> tuple[int, int]:
    """Double the resolution until two successive counts agree.

    Returns ``(count, resolution)``.  A 1024^3 grid needs several gigabytes,
    so the default cap is 512.
    """
    radii = [s.radius for s in sys.surfaces]
    lo, hi = _reference_box(sys)
    res = start
    # the smallest sphere should span at least 12 voxels before counts are trusted
    while radii and float(np.max(hi - lo)) / res > min(radii) / 6.0 and res < cap:
        res *= 2
    prev = voxel_region_count(sys, res)
    while res < cap:
        res *= 2
        cur = voxel_region_count(sys, res)
        if cur == prev:
            return cur, res
        prev = cur
    raise Unresolved(f"voxel counts did not stabilise by resolution {cap}")
