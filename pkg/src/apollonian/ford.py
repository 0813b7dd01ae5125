"""Farey fractions, friendly triplets and Ford circles.

Geometry uses the unscaled Ford circles (radius 1/(2q^2)); curvature labels
are the halved values q^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .descartes import AugmentedCircle, DescartesQuad, ExtendedQuad
from .errors import InvalidTripletError
from .geometry import Circle, X_AXIS
from .numerics import GaussianRational, as_fraction, format_fraction, parse_fraction

G = GaussianRational


@dataclass(frozen=True)
class FordCircle:
    fraction: Fraction
    circle: Circle

    @property
    def curvature(self) -> int:
        """Geometric curvature 2q^2."""
        return 2 * self.fraction.denominator ** 2

    @property
    def label(self) -> int:
        """Curvature in the halved convention, q^2."""
        return self.fraction.denominator ** 2


def ford_circle(f) -> FordCircle:
    f = as_fraction(f)
    q = f.denominator
    r = Fraction(1, 2 * q * q)
    return FordCircle(f, Circle(G(f, r), r * r))


def mediant(a, b) -> Fraction:
    a, b = as_fraction(a), as_fraction(b)
    return Fraction(a.numerator + b.numerator, a.denominator + b.denominator)


def farey_det(a, b) -> int:
    a, b = as_fraction(a), as_fraction(b)
    return a.denominator * b.numerator - b.denominator * a.numerator


def is_neighbor(a, b) -> bool:
    return abs(farey_det(a, b)) == 1


@dataclass(frozen=True)
class FriendlyTriplet:
    left: Fraction
    center: Fraction
    right: Fraction

    def __post_init__(self):
        for name in ("left", "center", "right"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if not (is_neighbor(self.left, self.right)
                and is_neighbor(self.left, self.center)
                and is_neighbor(self.center, self.right)):
            raise InvalidTripletError(f"{self} is not a set of pairwise Farey neighbours")
        if mediant(self.left, self.right) != self.center:
            raise InvalidTripletError(f"{format_fraction(self.center)} is not the mediant of the outer pair")

    @classmethod
    def root(cls) -> FriendlyTriplet:
        return cls(Fraction(0), Fraction(1, 2), Fraction(1))

    @classmethod
    def from_center(cls, center) -> FriendlyTriplet:
        left, right = parents(center)
        return cls(left, center, right)

    @classmethod
    def parse(cls, text: str) -> FriendlyTriplet:
        parts = [p.strip() for p in text.strip().strip("[]()").split(",")]
        if len(parts) != 3:
            raise InvalidTripletError(f"expected three fractions, got {text!r}")
        return cls(*(parse_fraction(p) for p in parts))

    @property
    def fractions(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.left, self.center, self.right)

    @property
    def q(self) -> tuple[int, int, int]:
        return tuple(f.denominator for f in self.fractions)

    def labels(self) -> tuple[int, int, int]:
        """(kappa_c, kappa_R, kappa_L) in the q^2 convention."""
        return (self.center.denominator ** 2, self.right.denominator ** 2, self.left.denominator ** 2)

    def __str__(self):
        return ",".join(format_fraction(f) for f in self.fractions)


def triplet_to_quad(t: FriendlyTriplet) -> DescartesQuad:
    kc, kr, kl = t.labels()
    return DescartesQuad(kc, kr, kl, 0)


def triplet_extended(t: FriendlyTriplet) -> ExtendedQuad:
    """Exact Ford circles of the triplet plus the x-axis, geometric units,
    in the order (center, right, left, axis)."""
    circles = [ford_circle(t.center).circle, ford_circle(t.right).circle,
               ford_circle(t.left).circle, X_AXIS]
    return ExtendedQuad.from_circles(circles)


def ford_root_extended() -> ExtendedQuad:
    return triplet_extended(FriendlyTriplet.root())


def ford_root_labels() -> ExtendedQuad:
    """The Ford root dilated by 2 so that curvatures equal the q^2 labels."""
    return ford_root_extended().scaled(2)


def stern_brocot_path(f) -> str:
    """L/R moves from 1/2 down the Stern-Brocot tree restricted to (0, 1)."""
    f = as_fraction(f)
    if not 0 < f < 1:
        raise ValueError("path is defined for fractions strictly between 0 and 1")
    lo, hi = Fraction(0), Fraction(1)
    node = mediant(lo, hi)
    path = []
    while node != f:
        if f < node:
            path.append("L")
            hi = node
        else:
            path.append("R")
            lo = node
        node = mediant(lo, hi)
    return "".join(path)


def follow_path(path: str) -> Fraction:
    lo, hi = Fraction(0), Fraction(1)
    node = mediant(lo, hi)
    for step in path:
        if step == "L":
            hi = node
        elif step == "R":
            lo = node
        else:
            raise ValueError(f"bad path step {step!r}")
        node = mediant(lo, hi)
    return node


def parents(f) -> tuple[Fraction, Fraction]:
    """The two Farey neighbours of f with smaller denominators (left, right)."""
    f = as_fraction(f)
    if not 0 < f < 1:
        raise ValueError("parents are defined for fractions strictly between 0 and 1")
    p, q = f.numerator, f.denominator
    # left parent a/b solves q a - p b = -1 with 0 < b < q
    b = pow(p, -1, q)  # p b = 1 mod q
    a = (p * b - 1) // q
    left = Fraction(a, b)
    right = Fraction(p - a, q - b)
    return left, right


def farey_sequence(n: int) -> list[Fraction]:
    out = {Fraction(p, q) for q in range(1, n + 1) for p in range(0, q + 1) if math.gcd(p, q) == 1}
    return sorted(out)


def friendly_triplets(max_qc: int) -> Iterator[FriendlyTriplet]:
    """All friendly triplets inside [0, 1] with center denominator <= max_qc."""
    for q in range(2, max_qc + 1):
        for p in range(1, q):
            if math.gcd(p, q) == 1:
                yield FriendlyTriplet.from_center(Fraction(p, q))


def ford_augmented(f) -> AugmentedCircle:
    return AugmentedCircle.from_circle(ford_circle(f).circle)
