"""Shared fixtures data and independent oracles for the test suite."""

from itertools import combinations

import numpy as np

from polyinv.geom import Sphere
from polyinv.polygon import Polygon

# six-stick trefoil with every vertex on the unit sphere (found by random search)
INSCRIBED_TREFOIL = np.array(
    [
        [0.61824471, 0.76798297, 0.16725915],
        [0.22450569, -0.44608975, -0.8663724],
        [-0.61706865, 0.67877733, 0.39810503],
        [0.83343667, 0.02856017, 0.55187646],
        [-0.44639309, 0.59910514, -0.66468507],
        [-0.84121338, -0.46010152, 0.28401872],
    ]
)
INSCRIBED_TREFOIL /= np.linalg.norm(INSCRIBED_TREFOIL, axis=1)[:, None]


def zigzag_decagon() -> Polygon:
    th = 2 * np.pi * np.arange(10) / 10
    ph = 0.3 * (-1.0) ** np.arange(10)
    return Polygon(np.stack([np.cos(th) * np.cos(ph), np.sin(th) * np.cos(ph), np.sin(ph)], axis=1))


def nine_component_spheres() -> list:
    """S1, S2, S3 meet pairwise in circles and triply in two points; S4 touches only S3."""
    return [
        Sphere(np.array([0.0, 0.0, 0.0]), 1.0),
        Sphere(np.array([1.0, 0.0, 0.0]), 1.0),
        Sphere(np.array([0.5, 0.8, 0.0]), 1.0),
        Sphere(np.array([0.5, 3.8, 0.0]), 2.0),
    ]


def triple_points(a: Sphere, b: Sphere, c: Sphere) -> np.ndarray:
    """Common points of three spheres by radical planes and a quadratic."""
    M = 2.0 * np.array([b.center - a.center, c.center - a.center])
    rhs = np.array(
        [
            b.center @ b.center - a.center @ a.center - b.radius**2 + a.radius**2,
            c.center @ c.center - a.center @ a.center - c.radius**2 + a.radius**2,
        ]
    )
    d = np.cross(M[0], M[1])
    if np.linalg.norm(d) < 1e-12:
        return np.empty((0, 3))
    x0 = np.linalg.lstsq(M, rhs, rcond=None)[0]
    d = d / np.linalg.norm(d)
    w = x0 - a.center
    B, C = w @ d, w @ w - a.radius**2
    disc = B * B - C
    if disc < 0:
        return np.empty((0, 3))
    s = np.sqrt(disc)
    return np.array([x0 + (-B - s) * d, x0 + (-B + s) * d])


def is_generic(spheres, margin: float = 1e-3) -> bool:
    """Pairwise transverse circles, triples in two distinct points, no point on a fourth sphere."""
    for a, b in combinations(spheres, 2):
        dist = np.linalg.norm(a.center - b.center)
        if not abs(a.radius - b.radius) + margin < dist < a.radius + b.radius - margin:
            return False
    for trio in combinations(range(len(spheres)), 3):
        pts = triple_points(*(spheres[k] for k in trio))
        if len(pts) != 2 or np.linalg.norm(pts[0] - pts[1]) < margin:
            return False
        for k, s in enumerate(spheres):
            if k not in trio and any(abs(np.linalg.norm(p - s.center) - s.radius) < margin for p in pts):
                return False
    return True


def random_generic_spheres(rng: np.random.Generator, m: int) -> list:
    while True:
        spheres = [Sphere(rng.normal(scale=0.45, size=3), rng.uniform(0.8, 1.2)) for _ in range(m)]
        if is_generic(spheres):
            return spheres


def random_polygon(rng: np.random.Generator, n: int, scale: float = 1.0) -> Polygon:
    return Polygon(rng.normal(scale=scale, size=(n, 3)))
