"""Self-similar hierarchies: the integer recursion matrix, its scaling data,
boundary maps and conjugation to other frames."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .descartes import ExtendedQuad
from .errors import DegenerateError, InconsistencyError, NonHyperbolicError
from .ford import FriendlyTriplet, ford_circle, ford_root_extended
from .geometry import Circle, GeneralizedCircle, X_AXIS, same_circle, tangency_point
from .mobius import MobiusMap, apply_circle, from_three_points
from .numerics import (
    INF,
    GaussianRational,
    PeriodicCF,
    QuadraticSurd,
    as_fraction,
    cf_expand,
    scaling_cf,
    surd_roots,
)

G = GaussianRational


@dataclass(frozen=True)
class HierarchyMap:
    """The recursion matrix [[a, b], [c, d]] acting on (p, q) columns."""

    a: int
    b: int
    c: int
    d: int
    target: FriendlyTriplet | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise InconsistencyError("recursion matrix must have determinant 1")

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def n_star(self) -> int:
        return abs(self.trace) - 2

    @property
    def degenerate(self) -> bool:
        """True when the map is not hyperbolic (identity or parabolic)."""
        return abs(self.trace) <= 2

    @property
    def zeta(self) -> QuadraticSurd | None:
        if self.degenerate:
            return None
        return surd_roots(abs(self.trace), 1)[0]

    @property
    def cf(self) -> PeriodicCF | None:
        z = self.zeta
        return None if z is None else cf_expand(z)

    @property
    def parity_conserving(self) -> bool:
        """Parity class by the n* rule: conserving for even n*."""
        return self.n_star % 2 == 0

    def to_mobius(self) -> MobiusMap:
        return MobiusMap(self.a, self.b, self.c, self.d)

    def apply(self, f) -> Fraction:
        f = as_fraction(f)
        p, q = f.numerator, f.denominator
        return Fraction(self.a * p + self.b * q, self.c * p + self.d * q)

    def apply_triplet(self, t: FriendlyTriplet) -> FriendlyTriplet:
        left, center, right = (self.apply(f) for f in t.fractions)
        if left > right:
            left, right = right, left
        return FriendlyTriplet(left, center, right)

    def to_json(self) -> dict:
        z = self.zeta
        cf = self.cf
        return {
            "fstar": [list(self.matrix[0]), list(self.matrix[1])],
            "n_star": self.n_star,
            "zeta": None if z is None else z.to_json(),
            "cf": None if cf is None else cf.to_json(),
            "parity_conserving": self.parity_conserving,
        }


def build_fstar(target: FriendlyTriplet) -> HierarchyMap:
    """Recursion matrix sending the root (0, 1/2, 1) onto the target triplet."""
    pl, ql = target.left.numerator, target.left.denominator
    pr, qr = target.right.numerator, target.right.denominator
    return HierarchyMap(pr - pl, pl, qr - ql, ql, target)


@dataclass(frozen=True)
class HierarchyLevel:
    level: int
    triplet: FriendlyTriplet

    @property
    def labels(self) -> tuple[int, int, int]:
        return self.triplet.labels()

    @property
    def kappa_c(self) -> int:
        return self.labels[0]


def iterate(hmap: HierarchyMap, start: FriendlyTriplet, levels: int) -> list[HierarchyLevel]:
    """Levels 0..levels of the hierarchy generated from ``start``."""
    out = [HierarchyLevel(0, start)]
    t = start
    for lvl in range(1, levels + 1):
        t = hmap.apply_triplet(t)
        out.append(HierarchyLevel(lvl, t))
    return out


@dataclass(frozen=True)
class Scaling:
    zeta: QuadraticSurd
    n_star: int
    cf: PeriodicCF

    @property
    def curvature_ratio(self) -> QuadraticSurd:
        return self.zeta * self.zeta


def scaling(hmap: HierarchyMap) -> Scaling:
    if hmap.degenerate:
        raise NonHyperbolicError(f"trace {hmap.trace} gives no scaling (|trace| <= 2)")
    zeta = hmap.zeta
    cf = cf_expand(zeta)
    if cf != scaling_cf(hmap.n_star):
        raise InconsistencyError(f"continued fraction {cf} does not match n* = {hmap.n_star}")
    return Scaling(zeta, hmap.n_star, cf)


# Boundary maps ----------------------------------------------------------------


def boundary_map(f) -> tuple[MobiusMap, Circle]:
    """Map sending the x-axis onto the Ford circle of f, and the mirror
    (circle of inversion) doing the same anti-conformally.

    The map is (1/q^2) h(q^2 (z - p/q)) + p/q with h(z) = z/(-iz + 1).
    """
    f = as_fraction(f)
    p, q = f.numerator, f.denominator
    pq = p * q
    m = MobiusMap(G(1, -pq), G(0, p * p), G(0, -q * q), G(1, pq))
    k = Fraction(1, q * q)
    mirror = Circle(G(f, k), k * k)
    return m, mirror


def boundary_map_symbolic():
    """Sympy matrix of the boundary map with symbols p, q (normalized)."""
    import sympy

    p, q, z = sympy.symbols("p q z")
    i = sympy.I

    def h(w):
        return w / (-i * w + 1)

    g = h(q ** 2 * (z - p / q)) / q ** 2 + p / q
    num, den = sympy.fraction(sympy.together(g))
    num, den = sympy.expand(num), sympy.expand(den)
    a, b = sympy.Poly(num, z).all_coeffs()
    c, d = sympy.Poly(den, z).all_coeffs()
    scale = sympy.simplify(d.subs(p, 0))
    mat = sympy.Matrix([[a, b], [c, d]]) / scale
    return sympy.simplify(mat), (p, q)


# Conjugation ----------------------------------------------------------------------


@dataclass(frozen=True)
class ConjugatedHierarchy:
    boundary: MobiusMap
    core: HierarchyMap

    @property
    def map(self) -> MobiusMap:
        """B F B^-1: the recursion acting in the target frame."""
        return self.boundary @ self.core.to_mobius() @ self.boundary.inverse()

    def scaling(self) -> Scaling:
        return scaling(self.core)

    def image_levels(self, start: FriendlyTriplet, levels: int) -> list[tuple[GeneralizedCircle, ...]]:
        """Images under B of each level's circles (center, right, left, axis)."""
        out = []
        for lvl in iterate(self.core, start, levels):
            t = lvl.triplet
            circles = [ford_circle(t.center).circle, ford_circle(t.right).circle,
                       ford_circle(t.left).circle, X_AXIS]
            out.append(tuple(apply_circle(self.boundary, c) for c in circles))
        return out


def conjugate(boundary: MobiusMap, core: HierarchyMap) -> ConjugatedHierarchy:
    return ConjugatedHierarchy(boundary, core)


# Re-basing a root ---------------------------------------------------------------


def rebase_root(root: ExtendedQuad) -> MobiusMap:
    """A map carrying the root configuration onto the Ford root.

    Three tangency points of the root are sent to the matching tangency
    points of the Ford root and the map is accepted only if all four circles
    land on Ford root circles (checked exactly).  The preferred assignment
    sends the circles, by decreasing curvature, to the gap circle 1/2, the
    x-axis, 1/1 and 0/1; a root that already contains a line keeps that line
    as the axis.  When the placement of the root has the opposite
    handedness this assignment needs an anti-conformal map, which is returned
    as a conjugating map so that mirror-image placements give identical
    curvatures.
    """
    src = root.geometric()
    dst = ford_root_extended().geometric()  # (1/2, 1/1, 0/1, axis)
    order = sorted(range(4), key=lambda i: (-root.circles[i].curvature, i))
    preferred = [0] * 4
    lines = [i for i in order if root.circles[i].curvature == 0]
    if lines:
        # a root that already has a line keeps it as the axis
        rest = [i for i in order if i != lines[0]]
        pairs = list(zip(rest, (0, 1, 2))) + [(lines[0], 3)]
    else:
        pairs = list(zip(order, (0, 3, 1, 2)))
    for idx, target in pairs:
        preferred[idx] = target
    preferred = tuple(preferred)
    candidates = [(preferred, False), (preferred, True)]
    candidates += [(p, False) for p in itertools.permutations(range(4)) if p != preferred]
    a, b, c = order[:3]
    try:
        s_pts = [tangency_point(src[a], src[b]), tangency_point(src[b], src[c]),
                 tangency_point(src[a], src[c])]
    except Exception as exc:  # pragma: no cover - validated quads are tangent
        raise DegenerateError(f"root tangency points unavailable: {exc}") from exc
    for perm, conj in candidates:
        d_pts = [tangency_point(dst[perm[a]], dst[perm[b]]),
                 tangency_point(dst[perm[b]], dst[perm[c]]),
                 tangency_point(dst[perm[a]], dst[perm[c]])]
        pts = [_conj(z) for z in s_pts] if conj else s_pts
        try:
            m = from_three_points(*pts, *d_pts)
        except DegenerateError:
            continue
        if conj:
            m = MobiusMap(m.a, m.b, m.c, m.d, True)
        if all(same_circle(apply_circle(m, src[i]), dst[perm[i]], oriented=False) for i in range(4)):
            return m
    raise DegenerateError("no Mobius map carries this root onto the Ford root")


def _conj(z):
    return z if z is INF else z.conjugate()
