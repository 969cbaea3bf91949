import itertools

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from polyinv.errors import CenterHit, PlanesMeetInLine
from polyinv.geom import (
    Circle3,
    Colinear,
    Coincident,
    Concyclic,
    Contained,
    Empty,
    Equal,
    InversionSpec,
    MobiusMap,
    Plane,
    Sphere,
    TangentPoint,
    TwoPoints,
    UniqueSphere,
    apply_mobius,
    apply_mobius_points,
    intersect_circle_sphere,
    intersect_spheres,
    invert_point,
    invert_surface,
    pole,
    same_circle,
    same_surface,
    shape_of_quadruple,
)

coord = st.floats(-10, 10, allow_nan=False)
points = arrays(float, 3, elements=coord)
radii = st.floats(0.1, 10)


def close(a, b, atol=1e-9):
    return np.allclose(a, b, atol=atol, rtol=1e-9)


# -------------------------------------------------------------- examples


@pytest.mark.parametrize(
    "center, r, x, want",
    [
        ((0, 0, 0), 1, (2, 0, 0), (0.5, 0, 0)),
        ((0, 0, 0), 1, (1, 0, 0), (1, 0, 0)),
        ((1, 0, 0), 2, (5, 0, 0), (2, 0, 0)),
    ],
)
def test_invert_point_examples(center, r, x, want):
    assert close(invert_point(InversionSpec(center, r), x), want)


def test_center_hit():
    with pytest.raises(CenterHit):
        invert_point(InversionSpec((1, 2, 3)), (1, 2, 3))


def test_mobius_examples():
    assert close(apply_mobius(MobiusMap(()), (3, 1, 4)), (3, 1, 4))
    mu = MobiusMap((InversionSpec((0, 0, 0), 1), InversionSpec((0, 0, 0), 2)))
    assert close(apply_mobius(mu, (1, 1, 0)), (4, 4, 0))
    r = 1e6
    far = MobiusMap((InversionSpec((r, 0, 0), r),))
    assert np.allclose(apply_mobius(far, (1, 2, 3)), (-1, 2, 3), atol=1e-3)


def test_mobius_center_hit_reports_index():
    # (2,0,0) -> (0.5,0,0), which is the second center
    mu = MobiusMap((InversionSpec((0, 0, 0)), InversionSpec((0.5, 0, 0))))
    with pytest.raises(CenterHit) as err:
        apply_mobius(mu, (2, 0, 0))
    assert err.value.index == 1


def test_pole():
    assert pole(MobiusMap(())) is None
    one = MobiusMap((InversionSpec((1, 2, 3)),))
    assert close(pole(one), (1, 2, 3))
    # two inversions at one center fix infinity
    same = MobiusMap((InversionSpec((1, 2, 3)), InversionSpec((1, 2, 3), 2.0)))
    assert pole(same) is None


@given(points, radii, points, radii)
def test_pole_hits_the_last_center(c1, r1, c2, r2):
    assume(np.linalg.norm(c1 - c2) > 1e-2)
    mu = MobiusMap((InversionSpec(c1, r1), InversionSpec(c2, r2)))
    p = pole(mu)
    assert close(invert_point(mu.inversions[0], p), c2, atol=1e-9 * (1 + np.linalg.norm(c2)))
    with pytest.raises(CenterHit) as err:
        apply_mobius(mu, p)
    assert err.value.index == 1


def test_quadruple_examples():
    s = shape_of_quadruple((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert isinstance(s, UniqueSphere) and same_surface(s.surface, Sphere((0, 0, 0), 1.0))
    p = shape_of_quadruple((0, 0, 0), (1, 0, 0), (0, 1, 0), (3, 3, 0))
    assert isinstance(p, UniqueSphere) and same_surface(p.surface, Plane((0, 0, 1), 0.0))
    c = shape_of_quadruple((1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0))
    assert isinstance(c, Concyclic) and same_circle(c.circle, Circle3((0, 0, 0), 1.0, (0, 0, 1)))
    assert isinstance(shape_of_quadruple((0, 0, 0), (1, 1, 1), (2, 2, 2), (5, 5, 5)), Colinear)
    assert isinstance(shape_of_quadruple((0, 0, 0), (0, 0, 0), (1, 0, 0), (1, 0, 0)), Coincident)
    # unit square corners are concyclic
    assert isinstance(shape_of_quadruple((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)), Concyclic)


def test_intersect_sphere_examples():
    a = Sphere((0, 0, 0), 1.0)
    lens = intersect_spheres(a, Sphere((1, 0, 0), 1.0))
    assert isinstance(lens, Circle3)
    assert same_circle(lens, Circle3((0.5, 0, 0), np.sqrt(3) / 2, (1, 0, 0)))
    touch = intersect_spheres(a, Sphere((2, 0, 0), 1.0))
    assert isinstance(touch, TangentPoint) and close(touch.point, (1, 0, 0))
    assert isinstance(intersect_spheres(a, Sphere((3, 0, 0), 1.0)), Empty)
    assert isinstance(intersect_spheres(a, Sphere((0, 0, 0), 1.0)), Equal)
    inner = intersect_spheres(Sphere((0, 0, 0), 2.0), Sphere((1, 0, 0), 1.0))
    assert isinstance(inner, TangentPoint) and close(inner.point, (2, 0, 0))


def test_intersect_planes():
    assert isinstance(intersect_spheres(Plane((0, 0, 1), 0), Plane((0, 0, -1), 0)), Equal)
    assert isinstance(intersect_spheres(Plane((0, 0, 1), 0), Plane((0, 0, 1), 1)), Empty)
    with pytest.raises(PlanesMeetInLine):
        intersect_spheres(Plane((0, 0, 1), 0), Plane((1, 0, 0), 0))
    c = intersect_spheres(Sphere((0, 0, 0), 1.0), Plane((0, 0, 1), 0.0))
    assert same_circle(c, Circle3((0, 0, 0), 1.0, (0, 0, 1)))


def test_intersect_circle_sphere_examples():
    unit = Circle3((0, 0, 0), 1.0, (0, 0, 1))
    assert isinstance(intersect_circle_sphere(unit, Sphere((0, 0, 0), 1.0)), Contained)
    two = intersect_circle_sphere(unit, Sphere((1, 0, 0), 1.0))
    assert isinstance(two, TwoPoints)
    got = sorted(map(tuple, np.round(two.points, 12)))
    assert np.allclose(got, [(0.5, -np.sqrt(3) / 2, 0), (0.5, np.sqrt(3) / 2, 0)])
    assert isinstance(intersect_circle_sphere(unit, Sphere((0, 0, 5), 1.0)), Empty)
    assert isinstance(intersect_circle_sphere(unit, Plane((0, 0, 1), 0.0)), Contained)


# -------------------------------------------------------------- properties


@given(points, radii, points)
def test_involution(center, r, x):
    assume(np.linalg.norm(x - center) > 1e-3 * r)
    spec = InversionSpec(center, r)
    back = invert_point(spec, invert_point(spec, x))
    assert np.linalg.norm(back - x) <= 1e-9 * (1 + np.linalg.norm(x)) * max(1.0, r / np.linalg.norm(x - center)) ** 2


@given(points, radii, points, radii, st.integers(0, 2**32 - 1))
def test_spheres_map_to_spheres(center, r, sc, sr, seed):
    spec = InversionSpec(center, r)
    assume(abs(np.linalg.norm(sc - center) - sr) > 0.1 * sr)
    u = np.random.default_rng(seed).normal(size=(20, 3))
    samples = sc + sr * u / np.linalg.norm(u, axis=1)[:, None]
    images = np.array([invert_point(spec, x) for x in samples])
    target = invert_surface(spec, Sphere(sc, sr))
    assert isinstance(target, Sphere)
    dist = np.linalg.norm(images - target.center, axis=1)
    assert np.allclose(dist, target.radius, rtol=1e-6, atol=1e-9 * target.radius)


def test_sphere_through_center_maps_to_plane():
    spec = InversionSpec((0, 0, 0), 1.0)
    image = invert_surface(spec, Sphere((1, 0, 0), 1.0))
    assert isinstance(image, Plane) and same_surface(image, Plane((1, 0, 0), 0.5))
    back = invert_surface(spec, image)
    assert same_surface(back, Sphere((1, 0, 0), 1.0))


@given(points, radii, radii, st.integers(0, 2**32 - 1))
def test_same_center_composition_is_dilation(center, r1, r2, seed):
    mu = MobiusMap((InversionSpec(center, r1), InversionSpec(center, r2)))
    xs = center + np.random.default_rng(seed).normal(size=(100, 3))
    got = apply_mobius_points(mu, xs)
    want = center + (r2 / r1) ** 2 * (xs - center)
    assert np.allclose(got, want, rtol=1e-9, atol=1e-9 * (r2 / r1) ** 2)


quad = arrays(float, (4, 3), elements=st.integers(-4, 4).map(float))


@given(quad, st.permutations(range(4)))
def test_quadruple_permutation_invariance(pts, perm):
    a = shape_of_quadruple(*pts)
    b = shape_of_quadruple(*pts[list(perm)])
    assert type(a) is type(b)
    if isinstance(a, UniqueSphere):
        assert same_surface(a.surface, b.surface)
    if isinstance(a, Concyclic):
        assert same_circle(a.circle, b.circle)


@given(quad)
def test_quadruple_shape_contains_points(pts):
    shape = shape_of_quadruple(*pts)
    if isinstance(shape, UniqueSphere):
        assert all(abs(shape.surface.signed_distance(p)) < 1e-8 * (1 + shape.surface.scale) for p in pts)
    if isinstance(shape, Concyclic):
        assert all(shape.circle.distance_to(p) < 1e-8 for p in pts)


surfaces = st.one_of(
    st.builds(Sphere, arrays(float, 3, elements=st.integers(-3, 3).map(float)), st.integers(1, 3).map(float)),
    st.builds(Plane, arrays(float, 3, elements=st.integers(-1, 1).map(float)).filter(lambda n: n.any()), st.integers(-2, 2).map(float)),
)


def same_result(a, b):
    if type(a) is not type(b):
        return False
    if isinstance(a, Circle3):
        return same_circle(a, b)
    if isinstance(a, TangentPoint):
        return close(a.point, b.point)
    return True


@given(surfaces, surfaces)
def test_intersect_spheres_symmetric(a, b):
    try:
        ab = intersect_spheres(a, b)
    except PlanesMeetInLine:
        with pytest.raises(PlanesMeetInLine):
            intersect_spheres(b, a)
        return
    assert same_result(ab, intersect_spheres(b, a))


def test_quadruple_all_orders_on_sphere():
    pts = np.array([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0)], dtype=float)
    for perm in itertools.permutations(range(4)):
        s = shape_of_quadruple(*pts[list(perm)])
        assert same_surface(s.surface, Sphere((0, 0, 0), 1.0))
