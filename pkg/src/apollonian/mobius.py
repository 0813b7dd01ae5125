"""Mobius and anti-Mobius maps over the Gaussian rationals."""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateError, UnsupportedError
from .geometry import GeneralizedCircle, from_hermitian, hermitian, transform_hermitian
from .numerics import (
    INF,
    ExtendedPoint,
    GaussianRational,
    QuadraticSurd,
    gaussian_sqrt,
    rational_sqrt,
)

G = GaussianRational


@dataclass(frozen=True, eq=False)
class MobiusMap:
    """z -> (a z + b)/(c z + d), or (a conj(z) + b)/(c conj(z) + d) when
    ``conjugating`` is set.  Entries are kept unnormalized; equality is up to
    a common nonzero factor."""

    a: GaussianRational
    b: GaussianRational
    c: GaussianRational
    d: GaussianRational
    conjugating: bool = False

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, G.of(getattr(self, name)))
        if self.det().is_zero():
            raise DegenerateError("Mobius matrix is singular")

    @classmethod
    def identity(cls) -> MobiusMap:
        return cls(1, 0, 0, 1)

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence], conjugating: bool = False) -> MobiusMap:
        (a, b), (c, d) = m
        return cls(a, b, c, d, conjugating)

    @property
    def entries(self) -> tuple[GaussianRational, ...]:
        return (self.a, self.b, self.c, self.d)

    def det(self) -> GaussianRational:
        return self.a * self.d - self.b * self.c

    def trace(self) -> GaussianRational:
        return self.a + self.d

    def scaled(self, k) -> MobiusMap:
        k = G.of(k)
        return MobiusMap(self.a * k, self.b * k, self.c * k, self.d * k, self.conjugating)

    def normalized(self) -> MobiusMap:
        """Scale so that the first nonzero entry is 1 (a canonical form)."""
        pivot = next(x for x in self.entries if not x.is_zero())
        return self.scaled(G(1) / pivot)

    def __eq__(self, other):
        if not isinstance(other, MobiusMap):
            return NotImplemented
        if self.conjugating != other.conjugating:
            return False
        return self.normalized().entries == other.normalized().entries

    def __hash__(self):
        return hash((self.normalized().entries, self.conjugating))

    def inverse(self) -> MobiusMap:
        a, b, c, d = self.entries
        if not self.conjugating:
            return MobiusMap(d, -b, -c, a)
        # w = M(conj z)  =>  z = conj(M^-1 w) = conj(M^-1)(conj w)
        return MobiusMap(d.conjugate(), -b.conjugate(), -c.conjugate(), a.conjugate(), True)

    def compose(self, other: MobiusMap) -> MobiusMap:
        """self after other."""
        oa, ob, oc, od = other.entries
        if self.conjugating:
            oa, ob, oc, od = (x.conjugate() for x in (oa, ob, oc, od))
        a, b, c, d = self.entries
        return MobiusMap(
            a * oa + b * oc,
            a * ob + b * od,
            c * oa + d * oc,
            c * ob + d * od,
            self.conjugating != other.conjugating,
        )

    __matmul__ = compose

    def __call__(self, z: ExtendedPoint) -> ExtendedPoint:
        return apply_point(self, z)

    def to_json(self) -> dict:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "c": str(self.c),
            "d": str(self.d),
            "conjugating": self.conjugating,
        }

    @classmethod
    def from_json(cls, data: dict) -> MobiusMap:
        return cls(
            G.parse(data["a"]),
            G.parse(data["b"]),
            G.parse(data["c"]),
            G.parse(data["d"]),
            bool(data.get("conjugating", False)),
        )

    def __str__(self):
        prefix = "conj " if self.conjugating else ""
        return f"{prefix}(({self.a})z+({self.b}))/(({self.c})z+({self.d}))"


def compose(f: MobiusMap, g: MobiusMap) -> MobiusMap:
    return f.compose(g)


def apply_point(f: MobiusMap, z: ExtendedPoint) -> ExtendedPoint:
    a, b, c, d = f.entries
    if z is INF:
        return INF if c.is_zero() else a / c
    z = G.of(z)
    if f.conjugating:
        z = z.conjugate()
    den = c * z + d
    if den.is_zero():
        return INF
    return (a * z + b) / den


def apply_circle(f: MobiusMap, circle: GeneralizedCircle) -> GeneralizedCircle:
    form = transform_hermitian(f.entries, f.conjugating, hermitian(circle))
    return from_hermitian(*form)


# Construction from three points --------------------------------------------


def _homogeneous(z: ExtendedPoint) -> tuple[GaussianRational, GaussianRational]:
    return (G(1), G(0)) if z is INF else (G.of(z), G(1))


def _det3(m) -> GaussianRational:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _distinct(points: Sequence[ExtendedPoint]) -> bool:
    seen = []
    for p in points:
        if any((p is INF and q is INF) or (p is not INF and q is not INF and p == q) for q in seen):
            return False
        seen.append(p)
    return True


def from_three_points(z1, z2, z3, w1, w2, w3) -> MobiusMap:
    """The unique Mobius map with f(z_k) = w_k.

    Entries are the four 3x3 determinants in the z, w coordinates; each row
    is multiplied through by the homogeneous denominators, which is the
    limit form when a point is at infinity.
    """
    zs, ws = (z1, z2, z3), (w1, w2, w3)
    if not (_distinct(zs) and _distinct(ws)):
        raise DegenerateError("source and target triples must be pairwise distinct")
    rows = []
    for z, w in zip(zs, ws):
        zn, zd = _homogeneous(z)
        wn, wd = _homogeneous(w)
        rows.append((zn * wn, zn * wd, zd * wn, zd * wd))  # zw, z, w, 1
    zw = [r[0] for r in rows]
    zz = [r[1] for r in rows]
    ww = [r[2] for r in rows]
    one = [r[3] for r in rows]
    a = _det3([[zw[k], ww[k], one[k]] for k in range(3)])
    b = _det3([[zw[k], zz[k], ww[k]] for k in range(3)])
    c = _det3([[zz[k], ww[k], one[k]] for k in range(3)])
    d = _det3([[zw[k], zz[k], one[k]] for k in range(3)])
    return MobiusMap(a, b, c, d)


# Classification -------------------------------------------------------------


class MapKind(enum.Enum):
    IDENTITY = "identity"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    LOXODROMIC = "loxodromic"


@dataclass(frozen=True)
class Classification:
    kind: MapKind
    trace_sq: GaussianRational  # (a+d)^2 / (ad-bc)
    fixed_points: tuple
    exact: bool


def classify(f: MobiusMap) -> Classification:
    if f.conjugating:
        raise UnsupportedError("classification applies to orientation-preserving maps only")
    a, b, c, d = f.entries
    det = f.det()
    tau = (a + d) * (a + d) / det
    if b.is_zero() and c.is_zero() and a == d:
        return Classification(MapKind.IDENTITY, tau, (), True)
    if tau == 4:
        kind = MapKind.PARABOLIC
    elif tau.is_real() and 0 <= tau.re < 4:
        kind = MapKind.ELLIPTIC
    elif tau.is_real() and tau.re > 4:
        kind = MapKind.HYPERBOLIC
    else:
        kind = MapKind.LOXODROMIC
    fixed, exact = _fixed_points(a, b, c, d)
    return Classification(kind, tau, fixed, exact)


def _fixed_points(a, b, c, d):
    # c z^2 + (d - a) z - b = 0
    disc = (a - d) * (a - d) + 4 * b * c
    if c.is_zero():
        if a == d:
            return (INF,), True
        return (b / (d - a), INF), True
    root = gaussian_sqrt(disc)
    if root is not None:
        pts = {((a - d) + root) / (2 * c), ((a - d) - root) / (2 * c)}
        return tuple(sorted(pts, key=lambda z: z.sort_key())), True
    real = all(x.is_real() for x in (a, b, c, d))
    if real and disc.re > 0 and rational_sqrt(disc.re) is None:
        s = QuadraticSurd.sqrt(disc.re)
        lo = (s * -1 + (a - d).re) / (2 * c.re)
        hi = (s + (a - d).re) / (2 * c.re)
        return tuple(sorted((lo, hi))), True
    r = cmath.sqrt(complex(disc))
    num = complex(a - d)
    den = 2 * complex(c)
    return ((num + r) / den, (num - r) / den), False


# Cross-ratio ------------------------------------------------------------------


def cross_ratio(z1, z2, z3, z4) -> ExtendedPoint:
    """R = (z4-z1)(z2-z3) / ((z2-z1)(z4-z3)); factors holding an infinite
    point are dropped (each point occurs once above and once below)."""
    pts = [z1, z2, z3, z4]
    distinct = []
    for p in pts:
        if not any((p is INF and q is INF) or (p is not INF and q is not INF and G.of(p) == G.of(q)) for q in distinct):
            distinct.append(p)
    if len(distinct) < 3:
        raise DegenerateError("cross-ratio needs at least three distinct points")

    def diff(p, q):
        if p is INF or q is INF:
            return None
        return G.of(p) - G.of(q)

    num = [diff(z4, z1), diff(z2, z3)]
    den = [diff(z2, z1), diff(z4, z3)]
    top = G(1)
    for x in num:
        if x is not None:
            top = top * x
    bottom = G(1)
    for x in den:
        if x is not None:
            bottom = bottom * x
    if bottom.is_zero():
        return INF
    return top / bottom
