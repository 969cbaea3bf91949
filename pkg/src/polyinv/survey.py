"""Which knot types do inversion centers produce, and how many can there be."""

from __future__ import annotations

import hashlib
from dataclasses import asdict, dataclass, field
from math import isqrt
from typing import Optional

import numpy as np

from .arrangement import SphereSystem, region_count_exact, region_count_upper, skipped_circles, sphere_system
from .errors import PolyInvError, SkippedDegenerate
from .geom import DEFAULT_EPS, InversionSpec, MobiusMap, Sphere, orthonormal_frame, pole, tol
from .knots import KnotClass, classify, mirror_label
from .polygon import Polygon, format_polygon, mobius_polygon, polygonal_inversion, relative_gap

SCHEMA = 1


# ---------------------------------------------------------------- bounds


def bound_knots(n: int) -> int:
    """Upper bound on knot types reachable from an n-edge polygon by one inversion."""
    if n < 4:
        raise ValueError("n must be at least 4")
    num = n**6 - 9 * n**5 + 21 * n**4 + 9 * n**3 - 22 * n**2 - 96 * n
    q, r = divmod(num, 24)
    assert r == 0
    return q


def lower_bound_knot_types(n: int) -> int:
    """floor((sqrt(2)^n - 4) / 12), clamped at zero."""
    if n < 1:
        raise ValueError("n must be positive")
    # floor((x - 4) / 12) == floor((floor(x) - 4) / 12) for real x
    root = isqrt(2**n)
    return max(0, (root - 4) // 12)


def crossover(double_for_mobius: bool = False, start: int = 4) -> int:
    """Smallest n whose lower bound on knot types exceeds the reachable bound."""
    factor = 2 if double_for_mobius else 1
    n = start
    while lower_bound_knot_types(n) <= factor * bound_knots(n):
        n += 1
    return n


@dataclass(frozen=True)
class BoundsTable:
    n: int
    spheres_max: int
    knots_upper: int
    knots_upper_mobius: int
    knots_lower: int


def bounds_table(n: int) -> BoundsTable:
    up = bound_knots(n)
    return BoundsTable(n, n * (n - 3) // 2, up, 2 * up, lower_bound_knot_types(n))


# ---------------------------------------------------------------- survey


@dataclass(frozen=True)
class SurveyStrategy:
    random_centers: int = 500
    samples_per_sphere: int = 8
    near_sphere_offset: float = 1e-2
    box_factor: float = 3.0
    extra_centers: tuple = ()


@dataclass
class SurveyEntry:
    label: str
    reliable: bool
    count: int
    center: list
    jones: list

    @property
    def key(self):
        return (self.label, tuple(map(tuple, self.jones)))


@dataclass
class SurveyReport:
    digest: str
    n: int
    seed: int
    strategy: SurveyStrategy
    entries: list = field(default_factory=list)
    spheres: int = 0
    region_count: int = 0
    region_upper: int = 0
    bound: int = 0
    evaluated: int = 0
    discarded: int = 0
    failures: int = 0
    radius: float = 1.0

    def labels(self, reliable_only: bool = True) -> list:
        keys = {e.key for e in self.entries if e.reliable or not reliable_only}
        return sorted({k[0] for k in keys})

    def distinct_reliable(self) -> int:
        return len({e.key for e in self.entries if e.reliable})

    def as_record(self) -> dict:
        out = {
            "schema": SCHEMA,
            "polygon_sha256": self.digest,
            "n": self.n,
            "seed": self.seed,
            "radius": self.radius,
            "spheres": self.spheres,
            "region_count_exact": self.region_count,
            "region_count_upper": self.region_upper,
            "bound_knots": self.bound,
            "centers_evaluated": self.evaluated,
            "centers_discarded": self.discarded,
            "failures": self.failures,
            "distinct_reliable_labels": self.distinct_reliable(),
        }
        for k, v in asdict(self.strategy).items():
            out[f"strategy_{k}"] = [list(c) for c in v] if k == "extra_centers" else v
        out["entries"] = [asdict(e) for e in self.entries]
        return out


def polygon_digest(K: Polygon) -> str:
    return hashlib.sha256(format_polygon(K).encode()).hexdigest()


def _fibonacci_directions(count: int) -> np.ndarray:
    k = np.arange(count) + 0.5
    z = 1.0 - 2.0 * k / count
    phi = np.pi * (1.0 + 5**0.5) * k
    r = np.sqrt(1.0 - z * z)
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def candidate_centers(K: Polygon, system: SphereSystem, strategy: SurveyStrategy, rng: np.random.Generator) -> np.ndarray:
    """Centers on both sides of every surface, random box points, then user centers."""
    out = []
    dirs = _fibonacci_directions(strategy.samples_per_sphere)
    off = strategy.near_sphere_offset
    mid = K.vertices.mean(axis=0)
    span = K.diameter
    for s in system.surfaces:
        if isinstance(s, Sphere):
            for u in dirs:
                out += [s.center + (1.0 - off) * s.radius * u, s.center + (1.0 + off) * s.radius * u]
        else:
            e1, e2 = orthonormal_frame(s.normal)
            foot = mid - s.signed_distance(mid) * s.normal
            for u in dirs:
                base = foot + span * (u[0] * e1 + u[1] * e2)
                out += [base - off * span * s.normal, base + off * span * s.normal]
    lo, hi = K.vertices.min(axis=0), K.vertices.max(axis=0)
    centre, half = (lo + hi) / 2.0, strategy.box_factor * (hi - lo) / 2.0
    out += list(rng.uniform(centre - half, centre + half, size=(strategy.random_centers, 3)))
    out += [np.asarray(c, dtype=float) for c in strategy.extra_centers]
    return np.array(out).reshape(-1, 3)


def center_is_clear(p, K: Polygon, system: SphereSystem, circles, eps: float) -> bool:
    need = 1e3 * tol(eps, system.scale, K.diameter)
    if system.surfaces and system.distance_to(p) <= need:
        return False
    if any(c.distance_to(p) <= need for c in circles):
        return False
    return bool(np.linalg.norm(K.vertices - p, axis=1).min() > need)


@dataclass
class CenterResult:
    center: np.ndarray
    label: str
    reliable: bool
    knot: Optional[KnotClass] = None


def evaluate_center(K: Polygon, p, seed=None, radius: float = 1.0, eps: float = DEFAULT_EPS) -> CenterResult:
    """Classify the polygonal inversion at ``p``; near-singular images are flagged unreliable."""
    image = polygonal_inversion(K, InversionSpec(p, radius), eps)
    reliable = relative_gap(image) > 1e3 * eps
    try:
        knot = classify(image, rng=seed, eps=eps)
    except PolyInvError:
        return CenterResult(np.asarray(p), "error", False)
    return CenterResult(np.asarray(p), knot.label, reliable, knot)


def survey_centers(
    K: Polygon,
    strategy: SurveyStrategy = SurveyStrategy(),
    seed: int = 0,
    eps: float = DEFAULT_EPS,
    system: Optional[SphereSystem] = None,
) -> SurveyReport:
    system = sphere_system(K, eps) if system is None else system
    rng = np.random.default_rng(seed)
    circles = skipped_circles(system)
    report = SurveyReport(polygon_digest(K), K.n, seed, strategy)
    report.spheres = len(system)
    report.region_count = region_count_exact(system, eps, seed=seed)
    report.region_upper = region_count_upper(len(system))
    report.bound = bound_knots(K.n) if K.n >= 4 else region_count_upper(len(system))

    groups: dict = {}
    for idx, p in enumerate(candidate_centers(K, system, strategy, rng)):
        if not center_is_clear(p, K, system, circles, eps):
            report.discarded += 1
            continue
        result = evaluate_center(K, p, seed=[seed, idx], eps=eps)
        report.evaluated += 1
        if result.knot is None:
            report.failures += 1
            continue
        jones = [[e, c] for e, c in result.knot.jones_t().items()]
        key = (result.label, result.reliable, tuple(map(tuple, jones)))
        if key in groups:
            groups[key].count += 1
        else:
            groups[key] = SurveyEntry(result.label, result.reliable, 1, [float(x) for x in p], jones)
    report.entries = list(groups.values())
    return report


# ---------------------------------------------------------------- Mobius group


@dataclass
class MobiusVerdict:
    holds: bool
    pole: Optional[np.ndarray]
    observed: str
    allowed: tuple


def check_mobius_theorem(
    K: Polygon,
    mu: MobiusMap,
    system: Optional[SphereSystem] = None,
    seed=0,
    eps: float = DEFAULT_EPS,
) -> MobiusVerdict:
    """Compare the type of mu-hat(K) with a single inversion at the pole of mu.

    Raises :class:`SkippedDegenerate` when the pole sits on (or numerically
    next to) a surface of the sphere system, where the knot type is not
    determined by the domain.
    """
    system = sphere_system(K, eps) if system is None else system
    image = mobius_polygon(K, mu, eps)
    p = pole(mu)
    if p is None:
        reference = K
    else:
        need = 1e3 * tol(eps, system.scale, K.diameter)
        if system.surfaces and system.distance_to(p) <= need:
            raise SkippedDegenerate("pole lies on a sphere of the system")
        if any(c.distance_to(p) <= need for c in skipped_circles(system)):
            raise SkippedDegenerate("pole lies on a concyclic circle of the system")
        if np.linalg.norm(K.vertices - p, axis=1).min() <= need:
            raise SkippedDegenerate("pole coincides with a vertex")
        reference = polygonal_inversion(K, InversionSpec(p, 1.0), eps)
    if relative_gap(reference) <= 1e3 * eps or relative_gap(image) <= 1e3 * eps:
        raise SkippedDegenerate("near-singular polygon")
    expected = classify(reference, rng=seed, eps=eps)
    observed = classify(image, rng=seed, eps=eps)
    # compare invariants, not labels, so "unknown" types are checked too
    holds = observed.jones in (expected.jones, expected.jones.mirror())
    return MobiusVerdict(holds, p, observed.label, (expected.label, mirror_label(expected.label)))


def random_mobius(rng: np.random.Generator, K: Polygon, count: int) -> MobiusMap:
    lo, hi = K.vertices.min(axis=0), K.vertices.max(axis=0)
    span = float(np.max(hi - lo))
    specs = []
    for _ in range(count):
        specs.append(InversionSpec(rng.uniform(lo - span, hi + span), span * rng.uniform(0.1, 2.0)))
    return MobiusMap(specs)
