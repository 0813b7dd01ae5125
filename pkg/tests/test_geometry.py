import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

import oracles
from apollonian.errors import CoincidentError, DegenerateError, NotTangentError
from apollonian.geometry import (
    Circle,
    Line,
    TangencyKind,
    X_AXIS,
    circle_from_json,
    circle_to_json,
    circumcircle,
    descartes_from_three_points,
    from_hermitian,
    hermitian,
    invert,
    same_circle,
    signed_curvature,
    tangency,
    tangency_point,
)
from apollonian.numerics import INF, GaussianRational as G, QuadraticSurd

coords = st.fractions(-5, 5, max_denominator=6)
pts = st.builds(G, coords, coords)
radii = st.fractions(Fraction(1, 6), 4, max_denominator=6)
circles = st.builds(lambda c, r, o: Circle(c, r * r, o), pts, radii, st.sampled_from((1, -1)))
lines = st.tuples(pts, pts).filter(lambda t: t[0] != t[1]).map(lambda t: Line(*t))
generalized = st.one_of(circles, lines)


@given(generalized)
def test_hermitian_round_trip(c):
    assert same_circle(from_hermitian(*hermitian(c)), c)


@given(generalized)
def test_json_round_trip(c):
    assert same_circle(circle_from_json(circle_to_json(c)), c)


@given(circles)
def test_flip_reverses_orientation(c):
    assert same_circle(c.flipped(), c, oriented=False)
    assert not same_circle(c.flipped(), c)


def test_signed_curvature():
    assert signed_curvature(Circle(G(0), Fraction(1, 4))) == 2
    assert signed_curvature(Circle(G(0), Fraction(1, 4), -1)) == -2
    assert signed_curvature(X_AXIS) == 0
    assert signed_curvature(Circle(G(0), 2)) == QuadraticSurd(0, Fraction(1, 2), 2)


def test_tangency_kinds():
    a = Circle(G(0), 1)
    assert tangency(a, Circle(G(2), 1)) is TangencyKind.EXTERNAL
    assert tangency(a, Circle(G(Fraction(1, 2)), Fraction(1, 4))) is TangencyKind.INTERNAL
    assert tangency(a, Circle(G(3), 1)) is TangencyKind.DISJOINT
    assert tangency(a, Circle(G(1), 1)) is TangencyKind.INTERSECTING
    assert tangency(a, Circle(G(0), Fraction(1, 4))) is TangencyKind.NESTED
    assert tangency(X_AXIS, Circle(G(0, 1), 1)) is TangencyKind.EXTERNAL
    assert tangency(X_AXIS, Line(G(0, 1), G(1, 1))) is TangencyKind.EXTERNAL
    with pytest.raises(CoincidentError):
        tangency(a, Circle(G(0), 1))


def test_tangency_points():
    assert tangency_point(Circle(G(0), 1), Circle(G(2), 1)) == G(1)
    assert tangency_point(X_AXIS, Circle(G(3, 1), 1)) == G(3)
    assert tangency_point(X_AXIS, Line(G(0, 1), G(1, 1))) is INF
    with pytest.raises(NotTangentError):
        tangency_point(Circle(G(0), 1), Circle(G(5), 1))


@given(pts, pts, pts)
def test_circumcircle_through_points(p, q, r):
    assume(len({p, q, r}) == 3)
    c = circumcircle(p, q, r)
    assert all(c.contains_point(z) for z in (p, q, r))
    if isinstance(c, Circle):
        center, radius = oracles.circle_through(complex(p), complex(q), complex(r))
        assert abs(center - complex(c.center)) < 1e-9
        assert abs(radius - math.sqrt(c.radius_sq)) < 1e-9


@given(circles, pts)
def test_inversion_is_involution_on_points(m, z):
    assume(z != m.center)
    w = invert(m, z)
    assert invert(m, w) == z
    # the float formula c + r^2 / conj(z - c)
    expected = complex(m.center) + float(m.radius_sq) / (complex(z) - complex(m.center)).conjugate()
    assert abs(complex(w) - expected) < 1e-9


@given(circles, generalized)
def test_inversion_is_involution_on_circles(m, c):
    try:
        img = invert(m, c)
    except DegenerateError:
        return
    assert same_circle(invert(m, img), c, oriented=False)


def test_mirror_of_axis():
    mirror = Circle(G(0, 1), 1)
    assert same_circle(invert(mirror, X_AXIS), Circle(G(0, Fraction(1, 2)), Fraction(1, 4)), oriented=False)
    line_mirror = Line(G(0), G(0, 1))  # the imaginary axis
    assert invert(line_mirror, G(2, 3)) == G(-2, 3)


def test_descartes_from_three_points():
    # any non-collinear triple of points is the contact triple of some configuration
    cfg = descartes_from_three_points(complex(0, 0), complex(0.6, 0.2), complex(-0.6, 0.2))
    assert cfg.residual() < 1e-9
    ks = sorted(abs(k) for k in cfg.curvatures())
    assert all(k > 0 for k in ks)
    with pytest.raises(DegenerateError):
        descartes_from_three_points(0, 1, 2)


@given(st.floats(0.2, 3.0), st.floats(0.2, 3.0))
def test_descartes_from_three_points_reconstructs(r1, r2):
    # two touching circles and a third touching both; feed the contacts back in
    c1, c2 = 0j, complex(r1 + r2, 0)
    k1, k2 = 1 / r1, 1 / r2
    k3 = 1.0
    # place circle 3 of radius 1 touching both
    d13, d23, d12 = r1 + 1, r2 + 1, r1 + r2
    cos = (d13 ** 2 + d12 ** 2 - d23 ** 2) / (2 * d13 * d12)
    c3 = d13 * cmath.exp(1j * math.acos(max(-1, min(1, cos))))
    contacts = [c1 + (c2 - c1) * r1 / d12, c1 + (c3 - c1) * r1 / d13, c2 + (c3 - c2) * r2 / d23]
    cfg = descartes_from_three_points(*contacts)
    got = sorted(c.curvature for c in cfg.circles)
    assert all(abs(a - b) < 1e-6 for a, b in zip(got, sorted((k1, k2, k3))))
    assert cfg.residual() < 1e-9
