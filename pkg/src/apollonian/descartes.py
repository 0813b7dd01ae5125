"""Descartes quadruples, their reflections, duality and the generator words
acting on curvature vectors."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DegenerateError,
    InconsistencyError,
    NonRealizableError,
    NotRepresentableError,
    PreconditionError,
)
from .geometry import Circle, GeneralizedCircle, Line, tangency, TANGENT_KINDS
from .numerics import GaussianRational, QuadraticSurd, as_fraction, rational_sqrt

G = GaussianRational


def _num(x):
    """Fractions with denominator 1 collapse to int (keeps integer work fast)."""
    x = as_fraction(x)
    return x.numerator if x.denominator == 1 else x


def check_descartes(k1, k2, k3, k4) -> bool:
    ks = [as_fraction(k) for k in (k1, k2, k3, k4)]
    return 2 * sum(k * k for k in ks) == sum(ks) ** 2


@dataclass(frozen=True)
class DescartesQuad:
    """Four signed curvatures in a fixed positional order."""

    k1: int | Fraction
    k2: int | Fraction
    k3: int | Fraction
    k4: int | Fraction

    def __post_init__(self):
        for name in ("k1", "k2", "k3", "k4"):
            object.__setattr__(self, name, _num(getattr(self, name)))
        if not check_descartes(*self.values):
            raise NonRealizableError(f"{self.values} violates the Descartes relation")
        if sum(1 for k in self.values if k < 0) > 1:
            raise NonRealizableError("at most one curvature may be negative")

    @classmethod
    def of(cls, values: Iterable) -> DescartesQuad:
        return cls(*values)

    @property
    def values(self) -> tuple:
        return (self.k1, self.k2, self.k3, self.k4)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def canonical(self) -> DescartesQuad:
        """Non-increasing order."""
        return DescartesQuad(*sorted(self.values, reverse=True))

    def is_integral(self) -> bool:
        return all(isinstance(k, int) for k in self.values)

    def __str__(self):
        return "(" + ",".join(str(k) for k in self.values) + ")"


@dataclass(frozen=True)
class FourthSolution:
    larger: Fraction | QuadraticSurd
    smaller: Fraction | QuadraticSurd
    rational: bool


def solve_fourth(k1, k2, k3) -> FourthSolution:
    """Both curvatures completing a Descartes configuration."""
    k1, k2, k3 = (as_fraction(k) for k in (k1, k2, k3))
    s = k1 + k2 + k3
    p = k1 * k2 + k2 * k3 + k3 * k1
    if p < 0:
        raise NonRealizableError(f"curvatures {k1}, {k2}, {k3} cannot be mutually tangent")
    root = rational_sqrt(p)
    if root is not None:
        return FourthSolution(_num(s + 2 * root), _num(s - 2 * root), True)
    r = QuadraticSurd.sqrt(p) * 2
    return FourthSolution(r + s, r * -1 + s, False)


def reflect_fourth(quad, i: int) -> DescartesQuad:
    """Replace position i (0-based) by its twin 2*(sum of the others) - k_i."""
    vals = list(quad)
    vals[i] = 2 * (sum(vals) - vals[i]) - vals[i]
    return DescartesQuad(*vals)


def dual(quad) -> DescartesQuad:
    """k_i -> (sum k)/2 - k_i, the involution exchanging a configuration with
    the one through its tangency points."""
    vals = [as_fraction(k) for k in quad]
    half = sum(vals) / 2
    return DescartesQuad(*(half - k for k in vals))


DUAL_MATRIX = tuple(
    tuple(Fraction(1, 2) - (1 if i == j else 0) for j in range(4)) for i in range(4)
)


def dual_form(quad) -> Fraction:
    """v D v^T; zero exactly on Descartes quadruples."""
    v = [as_fraction(k) for k in quad]
    return sum(v[i] * DUAL_MATRIX[i][j] * v[j] for i in range(4) for j in range(4))


# Generators -------------------------------------------------------------------

Matrix4 = tuple[tuple[int, ...], ...]


def _reflection(i: int) -> Matrix4:
    rows = []
    for r in range(4):
        if r == i:
            rows.append(tuple(-1 if c == i else 2 for c in range(4)))
        else:
            rows.append(tuple(1 if c == r else 0 for c in range(4)))
    return tuple(rows)


S_MATRICES: dict[str, Matrix4] = {f"S{i + 1}": _reflection(i) for i in range(4)}

D_MATRICES: dict[str, Matrix4] = {
    "D1": ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, 2, 2, 2)),
    "D2": ((2, -1, 2, 2), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)),
    "D3": ((2, 2, -1, 2), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1)),
    "D4": ((2, 2, 2, -1), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)),
}

GENERATORS: dict[str, Matrix4] = {**S_MATRICES, **D_MATRICES}


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple[tuple, ...]:
    n, m, p = len(a), len(b), len(b[0])
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)) for i in range(n))


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a)))


@dataclass(frozen=True)
class GeneratorWord:
    """A product of S/D letters written left to right; the rightmost letter
    acts first, as in a matrix product applied to a column vector."""

    letters: tuple[str, ...]

    def __post_init__(self):
        for letter in self.letters:
            if letter not in GENERATORS:
                raise ValueError(f"unknown generator {letter!r}")

    @classmethod
    def parse(cls, text: str) -> GeneratorWord:
        cleaned = text.replace("^", "").replace("*", " ")
        letters: list[str] = []
        for tok in cleaned.split():
            m = re.fullmatch(r"([SD]\d)(?:\^?(\d+))?", tok)
            if not m:
                # compact forms like "D3D3D2"
                parts = re.findall(r"[SD]\d", tok)
                if not parts or "".join(parts) != tok:
                    raise ValueError(f"cannot parse generator word {text!r}")
                letters.extend(parts)
                continue
            letters.extend([m.group(1)] * int(m.group(2) or 1))
        return cls(tuple(letters))

    def matrix(self) -> Matrix4:
        out: Matrix4 = tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4))
        for letter in self.letters:
            out = matmul(out, GENERATORS[letter])
        return out

    def __str__(self):
        return " ".join(self.letters)

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class WordResult:
    quad: DescartesQuad
    permutations: tuple[tuple[int, ...], ...]


def apply_word(word: GeneratorWord | str, quad) -> WordResult:
    """Apply the word to a curvature vector.

    D letters require a non-increasing vector; after each D letter the result
    is re-sorted and the permutation used is recorded.
    """
    if isinstance(word, str):
        word = GeneratorWord.parse(word)
    v = tuple(_num(k) for k in quad)
    perms = []
    for letter in reversed(word.letters):
        if letter.startswith("D"):
            if list(v) != sorted(v, reverse=True):
                raise PreconditionError(f"{letter} needs a non-increasing quadruple, got {v}")
            v = matvec(GENERATORS[letter], v)
            order = tuple(sorted(range(4), key=lambda i: -v[i]))
            perms.append(order)
            v = tuple(v[i] for i in order)
        else:
            v = matvec(GENERATORS[letter], v)
    return WordResult(DescartesQuad(*v), tuple(perms))


@dataclass(frozen=True)
class WordSpectrum:
    charpoly: tuple[int, ...]  # leading coefficient first
    eigenvalues: tuple[complex, ...]  # by decreasing modulus, with multiplicity
    exact: tuple[str, ...]  # closed forms when the polynomial factors


def word_eigen(word: GeneratorWord | str) -> WordSpectrum:
    """Characteristic polynomial of the word's matrix (exact) and its roots.

    Roots come from the exact factorization when available and are then
    evaluated to 30 digits; otherwise numpy's companion-matrix roots are used.
    """
    import numpy as np
    import sympy

    if isinstance(word, str):
        word = GeneratorWord.parse(word)
    lam = sympy.Symbol("lam")
    poly = sympy.Matrix(word.matrix()).charpoly(lam)
    coeffs = tuple(int(c) for c in poly.all_coeffs())
    exact_roots = sympy.roots(poly.as_expr(), lam, multiple=True)
    if len(exact_roots) == len(coeffs) - 1:
        values = [complex(sympy.N(r, 30)) for r in exact_roots]
        forms = [str(sympy.nsimplify(r)) for r in exact_roots]
    else:
        values = [complex(r) for r in np.roots(np.array(coeffs, dtype=float))]
        forms = []
    order = sorted(range(len(values)), key=lambda i: (-abs(values[i]), -values[i].real))
    return WordSpectrum(
        coeffs,
        tuple(values[i] for i in order),
        tuple(forms[i] for i in order) if forms else (),
    )


# Appendix identity ------------------------------------------------------------


def homogeneous_identity(l1, l2, l3) -> bool:
    """(l1^2 + l2^2 + l3^2)^2 == 2 (l1^4 + l2^4 + l3^4) for l1 + l2 + l3 = 0."""
    ls = [as_fraction(x) for x in (l1, l2, l3)]
    if sum(ls) != 0:
        raise PreconditionError("the three values must sum to zero")
    t2 = sum(x * x for x in ls)
    t4 = sum(x ** 4 for x in ls)
    return t2 * t2 == 2 * t4


# Curvature-center coordinates ---------------------------------------------------


@dataclass(frozen=True)
class AugmentedCircle:
    """(cocurvature, curvature, curvature * center).

    For a line the third slot holds the unit normal pointing into the line's
    interior and the cocurvature is twice the signed distance of the line
    from the origin along that normal.  These coordinates transform linearly
    under the Descartes reflections.
    """

    cocurvature: Fraction
    curvature: Fraction
    w: GaussianRational

    def __post_init__(self):
        object.__setattr__(self, "cocurvature", as_fraction(self.cocurvature))
        object.__setattr__(self, "curvature", as_fraction(self.curvature))
        object.__setattr__(self, "w", G.of(self.w))

    @classmethod
    def from_circle(cls, c: GeneralizedCircle) -> AugmentedCircle:
        if isinstance(c, Circle):
            r = rational_sqrt(c.radius_sq)
            if r is None:
                raise NotRepresentableError("circle radius is irrational")
            k = c.orientation / r
            return cls(k * c.center.abs2() - 1 / k, k, c.center * k)
        u = c.direction
        length = rational_sqrt(u.abs2())
        if length is None:
            raise NotRepresentableError("line has no rational unit normal")
        n = u * G(0, -1) / length
        return cls(2 * (c.p0 * n.conjugate()).re, 0, n)

    def to_circle(self) -> GeneralizedCircle:
        k = self.curvature
        if k != 0:
            return Circle(self.w / k, 1 / (k * k), 1 if k > 0 else -1)
        n = self.w
        if n.abs2() != 1:
            raise InconsistencyError("line normal is not a unit vector")
        p0 = n * (self.cocurvature / 2)
        return Line(p0, p0 + n * G(0, 1))

    @property
    def center(self) -> GaussianRational | None:
        return None if self.curvature == 0 else self.w / self.curvature

    def key(self) -> tuple:
        return (self.curvature, self.w.re, self.w.im, self.cocurvature)

    def scaled(self, factor) -> AugmentedCircle:
        """Coordinates of the image under the dilation z -> factor * z."""
        f = as_fraction(factor)
        return AugmentedCircle(self.cocurvature * f, self.curvature / f, self.w)


def _reflect_coord(values: Sequence, i: int):
    total = values[0]
    for v in values[1:]:
        total = total + v
    return (total - values[i]) * 2 - values[i]


@dataclass(frozen=True)
class ExtendedQuad:
    circles: tuple[AugmentedCircle, AugmentedCircle, AugmentedCircle, AugmentedCircle]

    def __post_init__(self):
        object.__setattr__(self, "circles", tuple(self.circles))
        if len(self.circles) != 4:
            raise ValueError("an extended quad has four circles")
        self.validate()

    def validate(self) -> None:
        if not check_descartes(*self.curvatures):
            raise InconsistencyError(f"curvatures {self.curvatures} violate Descartes")
        geo = self.geometric()
        for i, j in itertools.combinations(range(4), 2):
            kind = tangency(geo[i], geo[j])
            if kind not in TANGENT_KINDS:
                raise InconsistencyError(f"circles {i} and {j} are {kind.value}, not tangent")

    @classmethod
    def from_circles(cls, circles: Sequence[GeneralizedCircle]) -> ExtendedQuad:
        return cls(tuple(AugmentedCircle.from_circle(c) for c in circles))

    @property
    def curvatures(self) -> tuple:
        return tuple(_num(c.curvature) for c in self.circles)

    @property
    def quad(self) -> DescartesQuad:
        return DescartesQuad(*self.curvatures)

    @property
    def kz(self) -> tuple[GaussianRational, ...]:
        return tuple(c.w for c in self.circles)

    def geometric(self) -> tuple[GeneralizedCircle, ...]:
        return tuple(c.to_circle() for c in self.circles)

    def scaled(self, factor) -> ExtendedQuad:
        return ExtendedQuad(tuple(c.scaled(factor) for c in self.circles))


def extend_reflect(ext: ExtendedQuad, i: int) -> ExtendedQuad:
    """Reflect position i in all three coordinates; the result is re-validated."""
    cs = ext.circles
    new = AugmentedCircle(
        _reflect_coord([c.cocurvature for c in cs], i),
        _reflect_coord([c.curvature for c in cs], i),
        _reflect_coord([c.w for c in cs], i),
    )
    out = list(cs)
    out[i] = new
    return ExtendedQuad(tuple(out))


def dual_extended(ext: ExtendedQuad) -> tuple[AugmentedCircle, ...]:
    """The dual configuration in curvature-center coordinates (unvalidated,
    since its circles are orthogonal to the originals rather than tangent)."""
    cs = ext.circles
    half_k = sum(c.curvature for c in cs) / 2
    half_c = sum(c.cocurvature for c in cs) / 2
    half_w = (cs[0].w + cs[1].w + cs[2].w + cs[3].w) * Fraction(1, 2)
    return tuple(
        AugmentedCircle(half_c - c.cocurvature, half_k - c.curvature, half_w - c.w) for c in cs
    )


# Exact placement ------------------------------------------------------------------


def place_quad(k1, k2, k3, k4) -> ExtendedQuad:
    """Exact centers for a Descartes quadruple, in the given positional order.

    Integral quadruples always admit rational centers; other rational inputs
    may need an irrational coordinate, which raises NotRepresentableError.
    """
    ks = [as_fraction(k) for k in (k1, k2, k3, k4)]
    if not check_descartes(*ks):
        raise NonRealizableError(f"{tuple(ks)} violates the Descartes relation")
    if sum(1 for k in ks if k < 0) > 1:
        raise NonRealizableError("at most one curvature may be negative")
    zeros = [i for i, k in enumerate(ks) if k == 0]
    if len(zeros) > 1:
        raise DegenerateError("two lines: the packing is an unbounded strip")
    if zeros:
        circles = _place_with_line(ks, zeros[0])
    else:
        circles = _place_circles(ks)
    return ExtendedQuad.from_circles(circles)


def _place_circles(ks: list[Fraction]) -> list[GeneralizedCircle]:
    rho = [1 / k for k in ks]

    def dist(i, j):
        return abs(rho[i] + rho[j])

    for base in itertools.permutations(range(4), 3):
        a, b, c = base
        (d4,) = [i for i in range(4) if i not in base]
        dab, dac, dbc = dist(a, b), dist(a, c), dist(b, c)
        cos = (dab * dab + dac * dac - dbc * dbc) / (2 * dab * dac)
        sin = rational_sqrt(1 - cos * cos)
        if sin is None:
            raise NotRepresentableError("this quadruple has no rational placement")
        if sin == 0:
            continue
        centers = {a: G(0), b: G(dab), c: G(cos, sin) * dac}
        # |z - c_i|^2 = dist(i, d4)^2 for the three base centers: subtract pairs
        za, zb, zc = centers[a], centers[b], centers[c]
        ra, rb, rc = dist(a, d4) ** 2, dist(b, d4) ** 2, dist(c, d4) ** 2
        # 2 (z_b - z_a) . z = |z_b|^2 - |z_a|^2 - (rb - ra)
        m11, m12 = 2 * (zb.re - za.re), 2 * (zb.im - za.im)
        m21, m22 = 2 * (zc.re - za.re), 2 * (zc.im - za.im)
        r1 = zb.abs2() - za.abs2() - (rb - ra)
        r2 = zc.abs2() - za.abs2() - (rc - ra)
        det = m11 * m22 - m12 * m21
        if det == 0:
            continue
        centers[d4] = G((r1 * m22 - m12 * r2) / det, (m11 * r2 - r1 * m21) / det)
        return [Circle(centers[i], rho[i] * rho[i], 1 if ks[i] > 0 else -1) for i in range(4)]
    raise DegenerateError("could not place the quadruple")


def _place_with_line(ks: list[Fraction], line_at: int) -> list[GeneralizedCircle]:
    others = sorted((i for i in range(4) if i != line_at), key=lambda i: ks[i])
    if any(ks[i] <= 0 for i in others):
        raise NonRealizableError("circles tangent to a line must have positive curvature")
    rho = {i: 1 / ks[i] for i in others}

    def gap(i, j):
        g = rational_sqrt(rho[i] * rho[j])
        if g is None:
            raise NotRepresentableError("this quadruple has no rational placement")
        return 2 * g

    a, b, c = others
    xs = {a: Fraction(0), b: gap(a, b)}
    for sign in (1, -1):
        xc = sign * gap(a, c)
        if abs(xc - xs[b]) == gap(b, c):
            xs[c] = xc
            break
    else:
        raise InconsistencyError("no consistent placement along the line")
    out: list[GeneralizedCircle] = [None] * 4  # type: ignore[list-item]
    out[line_at] = Line(G(0), G(1))
    for i in others:
        out[i] = Circle(G(xs[i], rho[i]), rho[i] * rho[i])
    return out
