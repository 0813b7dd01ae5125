"""Pythagorean triples and their trees, the Euclid parametrization, the
linear map from Ford configurations, parity classes and Lorentz quadruples."""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .descartes import GeneratorWord, check_descartes, matmul, matvec, word_eigen
from .errors import NonRealizableError, NotRepresentableError
from .ford import FriendlyTriplet
from .numerics import QuadraticSurd, surd_roots
from .selfsim import HierarchyMap, iterate

H_MATRICES: dict[str, tuple[tuple[int, ...], ...]] = {
    "H1": ((1, -2, 2), (2, -1, 2), (2, -2, 3)),
    "H2": ((1, 2, 2), (2, 1, 2), (2, 2, 3)),
    "H3": ((-1, 2, 2), (-2, 1, 2), (-2, 2, 3)),
}

h_MATRICES: dict[str, tuple[tuple[int, ...], ...]] = {
    "h1": ((1, 2), (0, 1)),
    "h2": ((2, 1), (1, 0)),
    "h3": ((2, -1), (1, 0)),
}

FORD_TO_PYTH = ((1, -1, -1), (0, 1, -1), (0, 1, 1))

LORENTZ_MATRIX = ((1, -1, -1, -1), (0, 0, 0, 2), (0, 1, -1, 0), (1, 1, 2, 1))


@dataclass(frozen=True)
class PythTriplet:
    nx: int
    ny: int
    nt: int

    def __post_init__(self):
        if self.nx * self.nx + self.ny * self.ny != self.nt * self.nt:
            raise NonRealizableError(f"{self.values} is not Pythagorean")

    @property
    def values(self) -> tuple[int, int, int]:
        return (self.nx, self.ny, self.nt)

    def is_primitive(self) -> bool:
        return math.gcd(self.nx, self.ny, self.nt) == 1

    def __str__(self):
        return "(" + ",".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True)
class EuclidPair:
    q_r: int
    q_l: int

    def __post_init__(self):
        if not (self.q_r > self.q_l > 0) or math.gcd(self.q_r, self.q_l) != 1:
            raise ValueError(f"({self.q_r}, {self.q_l}) is not a coprime pair with q_r > q_l > 0")

    @property
    def eta(self) -> int:
        return 1 if self.q_r % 2 and self.q_l % 2 else 2


@dataclass(frozen=True)
class LorentzQuad:
    nx: int
    ny: int
    nz: int
    nt: int

    @property
    def values(self) -> tuple[int, int, int, int]:
        return (self.nx, self.ny, self.nz, self.nt)

    @property
    def valid(self) -> bool:
        return self.nx ** 2 + self.ny ** 2 + self.nz ** 2 == self.nt ** 2


def _index(i, prefix: str) -> str:
    if isinstance(i, str):
        name = i if i[0].lower() == prefix.lower() else prefix + i
    else:
        name = f"{prefix}{i}"
    if name[1:] not in ("1", "2", "3"):
        raise ValueError(f"matrix index must be 1..3, got {i!r}")
    return prefix + name[1:]


def H_apply(i, t: PythTriplet) -> PythTriplet:
    return PythTriplet(*matvec(H_MATRICES[_index(i, "H")], t.values))


def h_apply(i, pair: EuclidPair) -> EuclidPair:
    q_r, q_l = matvec(h_MATRICES[_index(i, "h")], (pair.q_r, pair.q_l))
    return EuclidPair(q_r, q_l)


def euclid_to_triplet(pair: EuclidPair) -> PythTriplet:
    r, l, eta = pair.q_r, pair.q_l, pair.eta
    return PythTriplet(eta * r * l, eta * (r * r - l * l) // 2, eta * (r * r + l * l) // 2)


def _square_root(k: int) -> int:
    r = math.isqrt(k) if k >= 0 else -1
    if r < 0 or r * r != k:
        raise NotRepresentableError(f"curvature {k} is not a perfect square")
    return r


def ford_to_pythagorean(quad: Sequence[int]) -> PythTriplet:
    """(kc, kR, kL) -> (nx, ny, nt); the divisor is 2 when q_c is even."""
    kc, kr, kl = (int(k) for k in quad)
    qc = _square_root(kc)
    _square_root(kr)
    _square_root(kl)
    delta = 2 if qc % 2 == 0 else 1
    raw = matvec(FORD_TO_PYTH, (kc, kr, kl))
    if any(v % delta for v in raw):
        raise NotRepresentableError(f"{(kc, kr, kl)} does not divide down by {delta}")
    return PythTriplet(*(v // delta for v in raw))


# Parity ------------------------------------------------------------------------


@dataclass(frozen=True)
class ParityReport:
    n_star: int
    rule: str  # from the parity of n*
    orbit: str  # observed along the hierarchy
    qc_orbit: tuple[int, ...]

    @property
    def agrees(self) -> bool:
        return self.rule == self.orbit


def orbit_parity(hmap: HierarchyMap, levels: int = 4,
                 start: FriendlyTriplet | None = None) -> tuple[str, tuple[int, ...]]:
    """Iterate and report whether q_c keeps its parity at every step."""
    start = start or FriendlyTriplet.root()
    qs = tuple(lvl.triplet.center.denominator for lvl in iterate(hmap, start, levels))
    same = all(a % 2 == b % 2 for a, b in zip(qs, qs[1:]))
    return ("conserving" if same else "alternating"), qs


def parity_class(hmap: HierarchyMap, levels: int = 4) -> ParityReport:
    if hmap.n_star < 1:
        raise ValueError("parity class needs n* >= 1")
    rule = "conserving" if hmap.n_star % 2 == 0 else "alternating"
    orbit, qs = orbit_parity(hmap, levels)
    return ParityReport(hmap.n_star, rule, orbit, qs)


# Lorentz quadruples -----------------------------------------------------------------


def curvatures_to_lorentz(quad: Sequence) -> LorentzQuad:
    ks = [int(k) for k in quad]
    if not check_descartes(*ks):
        raise NonRealizableError(f"{tuple(ks)} violates the Descartes relation")
    return LorentzQuad(*matvec(LORENTZ_MATRIX, ks))


def lorentz_orderings(quad: Sequence) -> list[tuple[int, ...]]:
    """Distinct orderings of the quadruple whose image is a Lorentz quadruple."""
    out = []
    for perm in sorted(set(itertools.permutations(int(k) for k in quad))):
        if curvatures_to_lorentz(perm).valid:
            out.append(perm)
    return out


# Trees ------------------------------------------------------------------------------


@dataclass
class TreeNode:
    triplet: PythTriplet
    word: tuple[str, ...] = ()
    children: list[TreeNode] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "triplet": list(self.triplet.values),
            "word": " ".join(self.word),
            "children": [c.to_json() for c in self.children],
        }

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


def tree_enumerate(root: PythTriplet, depth: int,
                   letters: Sequence[str] = ("H1", "H2", "H3")) -> TreeNode:
    """Tree of images of ``root``; children appear in the order of ``letters``."""
    for name in letters:
        if name not in H_MATRICES:
            raise ValueError(f"unknown tree matrix {name!r}")
    node = TreeNode(root)

    def grow(n: TreeNode, d: int):
        if d == 0:
            return
        for name in letters:
            child = TreeNode(PythTriplet(*matvec(H_MATRICES[name], n.triplet.values)), (name,) + n.word)
            n.children.append(child)
            grow(child, d - 1)

    grow(node, depth)
    return node


def parse_hword(text: str, prefix: str = "H") -> tuple[str, ...]:
    letters = re.findall(rf"{prefix}\s*([123])(?:\^(\d+))?", text)
    stripped = re.sub(rf"{prefix}\s*[123](\^\d+)?|\s", "", text)
    if stripped or not letters:
        raise ValueError(f"cannot parse word {text!r}")
    out: list[str] = []
    for digit, power in letters:
        out.extend([prefix + digit] * int(power or 1))
    return tuple(out)


def word_matrix(letters: Sequence[str]) -> tuple[tuple[int, ...], ...]:
    table = H_MATRICES if letters and letters[0].startswith("H") else h_MATRICES
    n = len(next(iter(table.values())))
    out = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    for name in letters:
        out = matmul(out, table[name])
    return out


def apply_hword(word: str, t: PythTriplet, times: int = 1) -> list[PythTriplet]:
    """Repeated images of ``t`` under the word (rightmost letter first)."""
    m = word_matrix(parse_hword(word, "H"))
    out = [t]
    for _ in range(times):
        out.append(PythTriplet(*matvec(m, out[-1].values)))
    return out


# D-strings against h-strings -----------------------------------------------------


@dataclass(frozen=True)
class StringReport:
    h_matrix: tuple[tuple[int, ...], ...]
    h_eigenvalue: QuadraticSurd
    d_dominant: complex
    squares_match: bool
    eigenvector_slope: QuadraticSurd  # y/x of the dominant eigenvector
    angle: float  # radians

    @property
    def angle_over_pi(self) -> float:
        return self.angle / math.pi


def _eval_poly(coeffs: Sequence[int], x: QuadraticSurd) -> QuadraticSurd:
    acc = QuadraticSurd.of(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def dstring_hstring_check(dword: str | GeneratorWord, hword: str) -> StringReport:
    """Compare a 4x4 D-word with a 2x2 h-word.

    The squares test is exact: the square of the h-product's larger eigenvalue
    must be a root of the D-product's characteristic polynomial, and the
    dominant one.
    """
    m = word_matrix(parse_hword(hword, "h"))
    (a, b), (c, d) = m
    det = a * d - b * c
    if det != 1:
        raise NotRepresentableError(f"h-product has determinant {det}")
    lam = surd_roots(a + d, det)[0]
    spec = word_eigen(dword)
    sq = lam * lam
    is_root = _eval_poly(spec.charpoly, sq) == 0
    dominant = abs(spec.eigenvalues[0])
    match = is_root and math.isclose(float(sq), dominant, rel_tol=1e-12)
    # (A - lam) v = 0 gives v = (b, lam - a) or (lam - d, c)
    if b != 0:
        slope = (lam - a) / QuadraticSurd.of(b)
    else:
        slope = QuadraticSurd.of(c) / (lam - d)
    angle = math.atan(float(slope))
    return StringReport(m, lam, spec.eigenvalues[0], match, slope, angle)
