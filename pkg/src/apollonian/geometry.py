"""Exact generalized circles in the plane.

A circle stores its squared radius so that mirrors built from circumcircles
(whose radius is usually irrational) stay exact.  Every generalized circle
also has an oriented Hermitian form ``A|z|^2 + B conj(z) + conj(B) z + C``
which is negative on the circle's interior; Mobius images are computed on
that form.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import CoincidentError, DegenerateError, NotTangentError
from .numerics import (
    INF,
    GaussianRational,
    QuadraticSurd,
    as_fraction,
    format_fraction,
    parse_fraction,
    rational_sqrt,
)

G = GaussianRational


@dataclass(frozen=True)
class Circle:
    """``|z - center|^2 = radius_sq``.

    orientation +1 means the circle bounds its interior disk; -1 marks an
    enclosing circle whose interior is the outside (negative curvature).
    """

    center: GaussianRational
    radius_sq: Fraction
    orientation: int = 1

    def __post_init__(self):
        object.__setattr__(self, "center", G.of(self.center))
        object.__setattr__(self, "radius_sq", as_fraction(self.radius_sq))
        if self.radius_sq <= 0:
            raise DegenerateError("radius_sq must be positive")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    def contains_point(self, z: GaussianRational) -> bool:
        return (z - self.center).abs2() == self.radius_sq

    def flipped(self) -> Circle:
        return Circle(self.center, self.radius_sq, -self.orientation)

    def __str__(self):
        c = self.center
        return (
            f"(x-{format_fraction(c.re)})^2+(y-{format_fraction(c.im)})^2"
            f"={format_fraction(self.radius_sq)}"
        )


@dataclass(frozen=True)
class Line:
    """The line through p0 and p1; its interior is the half-plane on the
    right of the direction p0 -> p1."""

    p0: GaussianRational
    p1: GaussianRational

    def __post_init__(self):
        object.__setattr__(self, "p0", G.of(self.p0))
        object.__setattr__(self, "p1", G.of(self.p1))
        if self.p0 == self.p1:
            raise DegenerateError("a line needs two distinct points")

    @property
    def direction(self) -> GaussianRational:
        return self.p1 - self.p0

    def contains_point(self, z: GaussianRational) -> bool:
        return ((z - self.p0) * self.direction.conjugate()).im == 0

    def flipped(self) -> Line:
        return Line(self.p1, self.p0)

    def __str__(self):
        return f"line through {self.p0} and {self.p1}"


GeneralizedCircle = Union[Circle, Line]

X_AXIS = Line(G(0), G(1))


class TangencyKind(enum.Enum):
    EXTERNAL = "external"
    INTERNAL = "internal"
    DISJOINT = "disjoint"
    NESTED = "nested"
    INTERSECTING = "intersecting"


TANGENT_KINDS = (TangencyKind.EXTERNAL, TangencyKind.INTERNAL)


# Hermitian forms ----------------------------------------------------------


def hermitian(c: GeneralizedCircle) -> tuple[Fraction, GaussianRational, Fraction]:
    """Return (A, B, C) with A, C real, negative exactly on the interior."""
    if isinstance(c, Circle):
        s = c.orientation
        return (
            Fraction(s),
            -c.center * s,
            s * (c.center.abs2() - c.radius_sq),
        )
    u = c.direction
    b = u * G(0, Fraction(1, 2))
    const = (u * c.p0.conjugate()).im
    return Fraction(0), b, const


def from_hermitian(a, b, c) -> GeneralizedCircle:
    a = as_fraction(a)
    b = G.of(b)
    c = as_fraction(c)
    if a != 0:
        center = -b / a
        radius_sq = (b.abs2() - a * c) / (a * a)
        if radius_sq <= 0:
            raise DegenerateError("Hermitian form has no real points")
        return Circle(center, radius_sq, 1 if a > 0 else -1)
    if b.is_zero():
        raise DegenerateError("Hermitian form describes no line")
    u = b * G(0, -2)
    p0 = b * (-c / (2 * b.abs2()))
    return Line(p0, p0 + u)


def transform_hermitian(
    m: tuple[GaussianRational, GaussianRational, GaussianRational, GaussianRational],
    conjugating: bool,
    form: tuple[Fraction, GaussianRational, Fraction],
) -> tuple[Fraction, GaussianRational, Fraction]:
    """Push a Hermitian form through z -> (a z' + b)/(c z' + d), z' = z or conj(z).

    Uses H' = N^* H N with N the adjugate of the matrix; the adjugate differs
    from the inverse by a nonzero scalar, which only rescales H' by a positive
    factor and so keeps the orientation.
    """
    a, b, c, d = (G.of(x) for x in m)
    A, B, C = form
    if conjugating:
        B = B.conjugate()
    # N = [[d, -b], [-c, a]], H = [[A, B], [conj B, C]]
    n11, n12, n21, n22 = d, -b, -c, a
    Bc = B.conjugate()
    # H N
    h11 = n11 * A + B * n21
    h12 = n12 * A + B * n22
    h21 = Bc * n11 + n21 * C
    h22 = Bc * n12 + n22 * C
    # N^* (H N)
    r11 = n11.conjugate() * h11 + n21.conjugate() * h21
    r12 = n11.conjugate() * h12 + n21.conjugate() * h22
    r22 = n12.conjugate() * h12 + n22.conjugate() * h22
    return r11.re, r12, r22.re


def same_circle(c1: GeneralizedCircle, c2: GeneralizedCircle, oriented: bool = True) -> bool:
    """Equality of generalized circles as point sets (and orientations)."""
    a1, b1, k1 = hermitian(c1)
    a2, b2, k2 = hermitian(c2)
    v1 = (G(a1), b1, G(k1))
    v2 = (G(a2), b2, G(k2))
    pivot = next(i for i in range(3) if not v1[i].is_zero())
    if v2[pivot].is_zero():
        return False
    ratio = v2[pivot] / v1[pivot]
    if any(v1[i] * ratio != v2[i] for i in range(3)):
        return False
    return ratio.re > 0 or not oriented


# Curvature and tangency ---------------------------------------------------


def signed_curvature(c: GeneralizedCircle):
    """Return orientation / radius as a Fraction when exact, else a surd."""
    if isinstance(c, Line):
        return Fraction(0)
    r = rational_sqrt(c.radius_sq)
    if r is not None:
        return c.orientation / r
    return c.orientation / QuadraticSurd.sqrt(c.radius_sq)


def _line_distance_sq(line: Line, z: GaussianRational) -> Fraction:
    u = line.direction
    cross = ((z - line.p0) * u.conjugate()).im
    return cross * cross / u.abs2()


def _foot(line: Line, z: GaussianRational) -> GaussianRational:
    u = line.direction
    t = ((z - line.p0) * u.conjugate()).re / u.abs2()
    return line.p0 + u * t


def tangency(c1: GeneralizedCircle, c2: GeneralizedCircle) -> TangencyKind:
    if isinstance(c1, Line) and isinstance(c2, Line):
        if (c1.direction * c2.direction.conjugate()).im != 0:
            return TangencyKind.INTERSECTING
        if c2.contains_point(c1.p0):
            raise CoincidentError("identical lines")
        # parallel lines touch at infinity
        return TangencyKind.EXTERNAL
    if isinstance(c1, Line) or isinstance(c2, Line):
        line, circ = (c1, c2) if isinstance(c1, Line) else (c2, c1)
        d2 = _line_distance_sq(line, circ.center)
        if d2 == circ.radius_sq:
            return TangencyKind.EXTERNAL
        return TangencyKind.DISJOINT if d2 > circ.radius_sq else TangencyKind.INTERSECTING
    r1, r2 = c1.radius_sq, c2.radius_sq
    dist = (c1.center - c2.center).abs2()
    if dist == 0 and r1 == r2:
        raise CoincidentError("identical circles")
    t = dist - r1 - r2
    prod4 = 4 * r1 * r2
    tt = t * t
    if tt == prod4:
        return TangencyKind.EXTERNAL if t > 0 else TangencyKind.INTERNAL
    if tt > prod4:
        return TangencyKind.DISJOINT if t > 0 else TangencyKind.NESTED
    return TangencyKind.INTERSECTING


def is_tangent(c1: GeneralizedCircle, c2: GeneralizedCircle) -> bool:
    return tangency(c1, c2) in TANGENT_KINDS


def tangency_point(c1: GeneralizedCircle, c2: GeneralizedCircle):
    """Point of contact of two tangent generalized circles (INF for parallel lines)."""
    if not is_tangent(c1, c2):
        raise NotTangentError("circles are not tangent")
    if isinstance(c1, Line) and isinstance(c2, Line):
        return INF
    if isinstance(c1, Line):
        return _foot(c1, c2.center)
    if isinstance(c2, Line):
        return _foot(c2, c1.center)
    # r1 r2 = |t|/2 at tangency, so r1/(r1 +- r2) = R1/(R1 + t/2)
    r1 = c1.radius_sq
    t = (c1.center - c2.center).abs2() - r1 - c2.radius_sq
    return c1.center + (c2.center - c1.center) * (r1 / (r1 + t / 2))


def circumcircle(p1, p2, p3) -> GeneralizedCircle:
    p1, p2, p3 = G.of(p1), G.of(p2), G.of(p3)
    if p1 == p2 or p2 == p3 or p1 == p3:
        raise DegenerateError("circumcircle needs three distinct points")
    ax, ay = p2.re - p1.re, p2.im - p1.im
    bx, by = p3.re - p1.re, p3.im - p1.im
    det = ax * by - ay * bx
    if det == 0:
        return Line(p1, p2)
    a2 = ax * ax + ay * ay
    b2 = bx * bx + by * by
    ux = (by * a2 - ay * b2) / (2 * det)
    uy = (ax * b2 - bx * a2) / (2 * det)
    return Circle(p1 + G(ux, uy), ux * ux + uy * uy)


# Inversion ----------------------------------------------------------------


def mirror_matrix(mirror: GeneralizedCircle):
    """Matrix of the anti-conformal reflection, to be applied to conj(z)."""
    if isinstance(mirror, Circle):
        z0 = mirror.center
        return (z0, G(mirror.radius_sq) - z0.abs2(), G(1), -z0.conjugate())
    u = mirror.direction
    rot = u / u.conjugate()
    return (rot, mirror.p0 - rot * mirror.p0.conjugate(), G(0), G(1))


def invert(mirror: GeneralizedCircle, obj):
    """Reflect a point or generalized circle in a circle or line mirror."""
    if isinstance(obj, (Circle, Line)):
        form = transform_hermitian(mirror_matrix(mirror), True, hermitian(obj))
        return from_hermitian(*form)
    if isinstance(mirror, Line):
        if obj is INF:
            return INF
        u = mirror.direction
        return mirror.p0 + u * ((G.of(obj) - mirror.p0) / u).conjugate()
    if obj is INF:
        return mirror.center
    z = G.of(obj)
    if z == mirror.center:
        return INF
    return mirror.center + G(mirror.radius_sq) / (z - mirror.center).conjugate()


# Serialization ------------------------------------------------------------


def _point_json(z: GaussianRational) -> list[str]:
    return [format_fraction(z.re), format_fraction(z.im)]


def _point_from_json(v) -> GaussianRational:
    return G(parse_fraction(v[0]), parse_fraction(v[1]))


def circle_to_json(c: GeneralizedCircle) -> dict:
    if isinstance(c, Circle):
        return {
            "center": _point_json(c.center),
            "radius_sq": format_fraction(c.radius_sq),
            "orientation": c.orientation,
        }
    return {"line": [_point_json(c.p0), _point_json(c.p1)]}


def circle_from_json(data: dict) -> GeneralizedCircle:
    if "line" in data:
        return Line(_point_from_json(data["line"][0]), _point_from_json(data["line"][1]))
    return Circle(
        _point_from_json(data["center"]),
        parse_fraction(data["radius_sq"]),
        int(data.get("orientation", 1)),
    )


# Three-point construction (numeric) -----------------------------------------


@dataclass(frozen=True)
class NumericCircle:
    """Floating circle; ``center`` is None for a line, which then carries a
    point and a unit normal."""

    curvature: float
    center: complex | None
    point: complex | None = None
    normal: complex | None = None

    @property
    def radius(self) -> float:
        return math.inf if self.curvature == 0 else 1.0 / abs(self.curvature)


@dataclass(frozen=True)
class ThreePointConfiguration:
    circles: tuple[NumericCircle, NumericCircle, NumericCircle]
    fourth: NumericCircle
    twin: NumericCircle
    has_line: bool

    def curvatures(self) -> tuple[float, float, float, float]:
        return tuple(c.curvature for c in self.circles) + (self.fourth.curvature,)

    def residual(self) -> float:
        """Relative Descartes residual of the four circles."""
        ks = self.curvatures()
        s = sum(ks)
        scale = sum(abs(k) for k in ks) ** 2
        return abs(2 * sum(k * k for k in ks) - s * s) / scale


def _gap(a: NumericCircle, b: NumericCircle) -> float:
    """Distance from tangency for a pair of numeric circles (0 when tangent)."""
    if a.center is None and b.center is None:
        return abs((a.normal * b.normal.conjugate()).imag)
    if a.center is None or b.center is None:
        line, circ = (a, b) if a.center is None else (b, a)
        dist = abs(((circ.center - line.point) * line.normal.conjugate()).real)
        return abs(dist - circ.radius)
    d = abs(a.center - b.center)
    ra, rb = a.radius, b.radius
    return min(abs(d - (ra + rb)), abs(d - abs(ra - rb)))


def tangency_residual(a: NumericCircle, b: NumericCircle) -> float:
    return _gap(a, b)


def _intersect_tangents(p: complex, q: complex, centre: complex) -> complex | None:
    # tangent at p has direction i (p - centre); solve p + s t_p = q + u t_q
    tp = 1j * (p - centre)
    tq = 1j * (q - centre)
    det = (tp.conjugate() * tq).imag
    scale = abs(tp) * abs(tq)
    if abs(det) <= 1e-12 * scale:
        return None
    s = ((q - p).conjugate() * tq).imag / det
    return p + s * tp


def descartes_from_three_points(p1, p2, p3) -> ThreePointConfiguration:
    """Three mutually tangent circles touching at p1, p2, p3, plus both
    solutions for a fourth circle.  Floating point throughout."""
    pts = [complex(p) for p in (p1, p2, p3)]
    a, b, c = pts
    area2 = ((b - a).conjugate() * (c - a)).imag
    if abs(area2) <= 1e-14 * max(abs(b - a), abs(c - a)) ** 2:
        raise DegenerateError("points are collinear")
    # circumcentre
    ba, ca = b - a, c - a
    centre = a + (abs(ba) ** 2 * ca - abs(ca) ** 2 * ba) / (ba.conjugate() * ca - ba * ca.conjugate())
    circles: list[NumericCircle] = []
    has_line = False
    # circle k touches the other two at the points other than pts[k]
    for k in range(3):
        i, j = [m for m in range(3) if m != k]
        x = _intersect_tangents(pts[i], pts[j], centre)
        if x is None:
            has_line = True
            direction = pts[j] - pts[i]
            normal = -1j * direction / abs(direction)
            # normal points away from the tangency point of the other two
            if ((pts[k] - pts[i]) * normal.conjugate()).real > 0:
                normal = -normal
            circles.append(NumericCircle(0.0, None, pts[i], normal))
        else:
            circles.append(NumericCircle(1.0 / abs(x - pts[i]), x))
    # signs: a circle internally tangent to both others encloses them
    signed = []
    for k, circ in enumerate(circles):
        if circ.center is None:
            signed.append(circ)
            continue
        others = [circles[m] for m in range(3) if m != k]
        enclosing = all(
            o.center is not None
            and abs(abs(circ.center - o.center) - abs(circ.radius - o.radius))
            < abs(abs(circ.center - o.center) - (circ.radius + o.radius))
            and circ.radius > o.radius
            for o in others
        )
        signed.append(NumericCircle(-circ.curvature if enclosing else circ.curvature, circ.center))
    circles = signed
    k1, k2, k3 = (cc.curvature for cc in circles)
    s = k1 + k2 + k3
    root = math.sqrt(max(k1 * k2 + k2 * k3 + k3 * k1, 0.0))
    ks = (s + 2 * root, s - 2 * root)

    def weighted(cc: NumericCircle) -> complex:
        return cc.curvature * cc.center if cc.center is not None else cc.normal

    w = [weighted(cc) for cc in circles]
    wsum = sum(w)
    wroot = cmath.sqrt(w[0] * w[1] + w[1] * w[2] + w[0] * w[2])
    candidates = []
    for k4 in ks:
        best = None
        for sgn in (1, -1):
            w4 = wsum + sgn * 2 * wroot
            if abs(k4) <= 1e-12 * max(abs(s), 1.0):
                cand = NumericCircle(0.0, None, None, w4 / abs(w4) if abs(w4) else 1j)
                # a line tangent to the circles: place it from one tangent circle
                ref = next(cc for cc in circles if cc.center is not None)
                cand = NumericCircle(0.0, None, ref.center + ref.radius * cand.normal, cand.normal)
            else:
                cand = NumericCircle(k4, w4 / k4)
            err = max(_gap(cand, cc) for cc in circles)
            if best is None or err < best[0]:
                best = (err, cand)
        candidates.append(best[1])
    return ThreePointConfiguration(tuple(circles), candidates[0], candidates[1], has_line)
