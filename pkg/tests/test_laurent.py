import cmath

from hypothesis import given
from hypothesis import strategies as st

from polyinv.laurent import LOOP, A, Laurent

polys = st.dictionaries(st.integers(-12, 12), st.integers(-5, 5), max_size=6).map(Laurent)


def test_no_zero_terms():
    p = Laurent({1: 2, 3: 0}) - Laurent({1: 2})
    assert not p and p.terms == {}


def test_loop_value():
    assert LOOP == -(A**2) - A ** (-2)
    assert LOOP.format() == "-A^2 - A^-2"


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Laurent()


@given(polys, polys, st.complex_numbers(min_magnitude=0.5, max_magnitude=2))
def test_evaluation_is_a_homomorphism(p, q, z):
    assert cmath.isclose((p * q)(z), p(z) * q(z), rel_tol=1e-9, abs_tol=1e-6)


@given(polys, polys)
def test_mirror_is_a_ring_map(p, q):
    assert (p * q).mirror() == p.mirror() * q.mirror()
    assert p.mirror().mirror() == p


@given(polys, st.integers(-5, 5))
def test_shift_is_monomial_product(p, k):
    assert p.shift(k) == p * Laurent.monomial(k)


def test_negative_power_of_monomial():
    assert (A**3) ** -2 == Laurent({-6: 1})
    assert (-A) ** -3 == Laurent({-3: -1})


def test_root_of_unity():
    # V(t) = t + t^3 - t^4 at t = -1 has modulus 3; t = A^-4 with A = exp(i pi/4)
    V = Laurent({-4: 1, -12: 1, -16: -1})
    assert round(abs(V.at_root_of_unity(1, 8))) == 3
