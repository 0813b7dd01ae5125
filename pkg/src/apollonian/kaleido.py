"""Kaleidoscopic structure: symmetric partners, the Delta invariant, three-fold
nesting and Pappus chains with their mirrors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .descartes import DescartesQuad, check_descartes, solve_fourth
from .errors import InconsistencyError, NoIntegerDescentError, NotTangentError, NonRealizableError
from .geometry import (
    Circle,
    GeneralizedCircle,
    Line,
    TANGENT_KINDS,
    invert,
    is_tangent,
    same_circle,
    tangency,
    tangency_point,
)
from .mobius import MobiusMap, apply_circle, apply_point
from .numerics import GaussianRational, QuadraticSurd, as_fraction

G = GaussianRational


# Symmetric partners -------------------------------------------------------------


@dataclass(frozen=True)
class SymmetricQuad:
    """The configuration (-ka, kb, kb, kc): an outer circle and an inner
    triple with two equal curvatures."""

    ka: int
    kb: int
    kc: int
    eta: int = 1

    def __post_init__(self):
        if self.eta not in (1, 2):
            raise ValueError("eta must be 1 or 2")
        if not check_descartes(*self.curvatures):
            raise NonRealizableError(f"{self.curvatures} violates the Descartes relation")

    @property
    def curvatures(self) -> tuple[int, int, int, int]:
        return (-self.ka, self.kb, self.kb, self.kc)

    @property
    def delta(self) -> int:
        return self.kb - self.kc

    def quad(self) -> DescartesQuad:
        return DescartesQuad(*self.curvatures)

    def to_json(self) -> dict:
        return {
            "outer": str(-self.ka),
            "inner": [str(self.kb), str(self.kb), str(self.kc)],
            "delta": str(self.delta),
        }

    def __str__(self):
        return "(" + ",".join(str(k) for k in self.curvatures) + ")"


def _exact_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise InconsistencyError(f"{what} = {x} is not an integer")
    return x.numerator


def _from_dual(k0, k1, k2, eta) -> tuple[Fraction, Fraction, Fraction]:
    return (eta * k0, Fraction(eta, 2) * (k1 + k2), eta * (2 * k1 - k0))


def _from_ford(kc, kr, kl, eta) -> tuple[Fraction, Fraction, Fraction]:
    h = Fraction(eta, 2)
    return (h * (kc - kr - kl), h * kc, h * (kc - kr + 3 * kl))


def symmetric_partner(quad: Sequence) -> SymmetricQuad:
    """Symmetric partner of a Ford configuration.

    Accepts either the Ford labels (kc, kR, kL) or the dual quadruple
    (-k0, k1, k2, k3).  Both closed forms are evaluated and must agree.
    """
    vals = [as_fraction(k) for k in quad]
    if len(vals) == 3:
        kc, kr, kl = vals
        half = (kc + kr + kl) / 2
        k0, k1, k2, k3 = kc - half, half - kr, half - kl, half
    elif len(vals) == 4:
        k0, k1, k2, k3 = -vals[0], vals[1], vals[2], vals[3]
        if k0 + k3 != k1 + k2:
            raise InconsistencyError(f"{tuple(vals)} is not the dual of a Ford configuration")
        kc, kr, kl = k0 + k3, k3 - k1, k3 - k2
    else:
        raise ValueError("expected (kc, kR, kL) or (-k0, k1, k2, k3)")
    if not check_descartes(-k0, k1, k2, k3):
        raise NonRealizableError(f"{(-k0, k1, k2, k3)} violates the Descartes relation")
    eta = 1 if _exact_int(k0, "k0") % 2 else 2
    a = _from_dual(k0, k1, k2, eta)
    b = _from_ford(kc, kr, kl, eta)
    if a != b:
        raise InconsistencyError(f"closed forms disagree: {a} vs {b}")
    ka, kb, kcs = (_exact_int(x, "partner curvature") for x in a)
    return SymmetricQuad(ka, kb, kcs, eta)


def symmetric_descend(s: SymmetricQuad) -> SymmetricQuad:
    """One level inward: the outer circle is reflected and a new equal pair is
    found inside it with the same Delta."""
    m = 2 * (2 * s.kb + s.kc) + s.ka
    d = s.delta
    # Descartes for (-m, a, a, a - d) reduces to 3a^2 - (2d + 6m) a - (m - d)^2 = 0,
    # whose discriminant is 16 (d^2 + 3 m^2)
    disc = d * d + 3 * m * m
    r = math.isqrt(disc)
    if r * r != disc:
        raise NoIntegerDescentError(f"d^2 + 3m^2 = {disc} is not a square (m={m}, delta={d})")
    num = 2 * d + 6 * m + 4 * r
    if num % 6:
        raise NoIntegerDescentError(f"inner curvature {Fraction(num, 6)} is not an integer")
    a = num // 6
    eta = 1 if m % 2 else 2
    return SymmetricQuad(m, a, a - d, eta)


def symmetric_orbit(s: SymmetricQuad, levels: int) -> list[SymmetricQuad]:
    out = [s]
    for _ in range(levels):
        out.append(symmetric_descend(out[-1]))
    return out


def threefold_ratio(k) -> QuadraticSurd:
    """Ratio of the two fourth curvatures when three equal circles touch."""
    k = as_fraction(k)
    if k <= 0:
        raise ValueError("curvature must be positive")
    sol = solve_fourth(k, k, k)
    return QuadraticSurd.of(sol.larger) / QuadraticSurd.of(sol.smaller)


# Pappus chains ------------------------------------------------------------------


@dataclass(frozen=True)
class PappusChain:
    hosts: tuple[GeneralizedCircle, GeneralizedCircle]
    chain: tuple[GeneralizedCircle, ...]
    mirror: GeneralizedCircle

    def tangency_points(self) -> list[GaussianRational]:
        return [tangency_point(a, b) for a, b in zip(self.chain, self.chain[1:])]

    def verify(self) -> bool:
        c1, c2 = self.hosts
        for c in self.chain:
            if not (is_tangent(c, c1) and is_tangent(c, c2)):
                return False
        for a, b in zip(self.chain, self.chain[1:]):
            if not is_tangent(a, b):
                return False
        if not all(self.mirror.contains_point(p) for p in self.tangency_points()):
            return False
        return (same_circle(invert(self.mirror, c1), c2, oriented=False)
                and same_circle(invert(self.mirror, c2), c1, oriented=False))


def _strip_map(c1: GeneralizedCircle, c2: GeneralizedCircle) -> MobiusMap:
    """A map taking both hosts to horizontal lines."""
    if isinstance(c1, Line) and isinstance(c2, Line):
        return MobiusMap(1, -c1.p0, 0, c1.direction)
    t_pt = tangency_point(c1, c2)
    circ = c2 if isinstance(c2, Circle) else c1
    # tangent direction at the contact point, scaled so unit chain steps
    # come out as simple as possible
    t = G(0, -1) * (circ.center - t_pt)
    return MobiusMap(0, t, 1, -t_pt)


def _horizontal_level(m: MobiusMap, c: GeneralizedCircle) -> Fraction:
    img = apply_circle(m, c)
    if not isinstance(img, Line) or img.direction.im != 0:
        raise NotTangentError("hosts did not straighten into parallel lines")
    return img.p0.im


def pappus_chain(c1: GeneralizedCircle, c2: GeneralizedCircle, n: int) -> PappusChain:
    """The first n circles of the chain between two tangent hosts, and the
    mirror through the chain's points of contact."""
    if n < 1:
        raise ValueError("chain length must be positive")
    if tangency(c1, c2) not in TANGENT_KINDS:
        raise NotTangentError("Pappus chain hosts must be tangent")
    phi = _strip_map(c1, c2)
    y1, y2 = _horizontal_level(phi, c1), _horizontal_level(phi, c2)
    w = abs(y2 - y1)
    ymid = (y1 + y2) / 2
    back = phi.inverse()
    chain = tuple(
        apply_circle(back, Circle(G(k * w, ymid), (w / 2) ** 2)) for k in range(1, n + 1)
    )
    mirror = apply_circle(back, Line(G(0, ymid), G(1, ymid)))
    return PappusChain((c1, c2), chain, mirror)


def pappus_point(c1: GeneralizedCircle, c2: GeneralizedCircle, k: int):
    """Contact point of chain circles k and k+1, in closed form."""
    phi = _strip_map(c1, c2)
    y1, y2 = _horizontal_level(phi, c1), _horizontal_level(phi, c2)
    w = abs(y2 - y1)
    return apply_point(phi.inverse(), G((k + Fraction(1, 2)) * w, (y1 + y2) / 2))

