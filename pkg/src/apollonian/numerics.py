"""Exact scalar arithmetic: rationals, Gaussian rationals, quadratic surds and
periodic continued fractions.

Rationals are plain :class:`fractions.Fraction` values (always reduced, with a
positive denominator).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterator, Union

from .errors import ComplexRootsError, InvalidSurdError

RationalLike = Union[int, Fraction]

_TRIAL_LIMIT = 100_000


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def format_fraction(x: Fraction) -> str:
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"malformed rational {text!r}")
    return Fraction(text)


def rational_sqrt(x) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    x = as_fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Split ``n >= 0`` as ``s*s*d`` with ``d`` square-free; returns ``(s, d)``."""
    if n < 0:
        raise InvalidSurdError(f"negative radicand {n}")
    if n == 0:
        return 0, 0
    r = math.isqrt(n)
    if r * r == n:
        return r, 1
    s, d, m = 1, 1, n
    p = 2
    while p <= _TRIAL_LIMIT and p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    if m > 1:
        r = math.isqrt(m)
        if r * r == m:
            s *= r
        elif m < _TRIAL_LIMIT ** 3:
            # every prime factor of m exceeds the trial bound, so m = p or p*q
            d *= m
        else:
            from sympy import factorint

            for prime, e in factorint(m).items():
                s *= prime ** (e // 2)
                if e % 2:
                    d *= prime
    return s, d


# --------------------------------------------------------------------------
# Gaussian rationals


_NUM = r"\d+(?:/\d+)?"
_GAUSS_FULL = re.compile(rf"^\s*([+-]?{_NUM})\s*([+-])\s*({_NUM})?\s*i\s*$")
_GAUSS_IMAG = re.compile(rf"^\s*([+-]?)\s*({_NUM})?\s*i\s*$")


@dataclass(frozen=True, eq=False)
class GaussianRational:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_fraction(self.re))
        object.__setattr__(self, "im", as_fraction(self.im))

    @classmethod
    def of(cls, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact")
        return cls(as_fraction(value))

    def __add__(self, other):
        try:
            o = GaussianRational.of(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.of(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.of(other) - self

    def __mul__(self, other):
        try:
            o = GaussianRational.of(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussianRational.of(other)
        except TypeError:
            return NotImplemented
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        return GaussianRational.of(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def __str__(self):
        sign = "-" if self.im < 0 else "+"
        return f"{format_fraction(self.re)}{sign}{format_fraction(abs(self.im))} i"

    def __repr__(self):
        return f"GaussianRational({self})"

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """Parse ``"p/q+r/s i"``, ``"p/q"`` or ``"r/s i"``."""
        if m := _GAUSS_FULL.match(text):
            im = Fraction(m.group(3)) if m.group(3) else Fraction(1)
            return cls(Fraction(m.group(1)), -im if m.group(2) == "-" else im)
        if m := _GAUSS_IMAG.match(text):
            im = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            return cls(0, -im if m.group(1) == "-" else im)
        return cls(parse_fraction(text))


I = GaussianRational(0, 1)


class _Infinity:
    """The point at infinity of the extended complex plane."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
ExtendedPoint = Union[GaussianRational, _Infinity]


def is_infinite(z) -> bool:
    return z is INF


def gaussian_sqrt(w: GaussianRational) -> GaussianRational | None:
    """Exact square root in Q(i), or None when it does not exist."""
    w = GaussianRational.of(w)
    if w.im == 0:
        r = rational_sqrt(w.re)
        if r is not None:
            return GaussianRational(r)
        r = rational_sqrt(-w.re)
        return None if r is None else GaussianRational(0, r)
    modulus = rational_sqrt(w.abs2())
    if modulus is None:
        return None
    x = rational_sqrt((modulus + w.re) / 2)
    if x is None or x == 0:
        return None
    return GaussianRational(x, w.im / (2 * x))


# --------------------------------------------------------------------------
# Quadratic surds


@dataclass(frozen=True, eq=False)
class QuadraticSurd:
    """The real number ``a + b*sqrt(d)`` with ``d`` square-free.

    A value with ``b == 0`` is stored with ``d == 0`` so equal rationals compare
    structurally equal.
    """

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self):
        a, b, d = as_fraction(self.a), as_fraction(self.b), int(self.d)
        if d < 0:
            raise InvalidSurdError(f"negative radicand {d}")
        s, d = squarefree_decompose(d)
        b *= s
        if d == 1:
            a, b, d = a + b, Fraction(0), 0
        if b == 0 or d == 0:
            b, d = Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def of(cls, value) -> QuadraticSurd:
        if isinstance(value, QuadraticSurd):
            return value
        return cls(as_fraction(value))

    @classmethod
    def sqrt(cls, x) -> QuadraticSurd:
        """Exact square root of a nonnegative rational."""
        x = as_fraction(x)
        if x < 0:
            raise InvalidSurdError(f"square root of negative {x}")
        # sqrt(n/m) = sqrt(n*m)/m
        return cls(0, Fraction(1, x.denominator), x.numerator * x.denominator)

    def is_rational(self) -> bool:
        return self.b == 0

    def _radicand_with(self, other: QuadraticSurd) -> int:
        if self.d and other.d and self.d != other.d:
            raise InvalidSurdError(f"mixed radicands {self.d} and {other.d}")
        return self.d or other.d

    def __add__(self, other):
        try:
            o = QuadraticSurd.of(other)
        except TypeError:
            return NotImplemented
        return QuadraticSurd(self.a + o.a, self.b + o.b, self._radicand_with(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        try:
            o = QuadraticSurd.of(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return QuadraticSurd.of(other) - self

    def __mul__(self, other):
        try:
            o = QuadraticSurd.of(other)
        except TypeError:
            return NotImplemented
        d = self._radicand_with(o)
        return QuadraticSurd(
            self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadraticSurd:
        return QuadraticSurd(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, other):
        try:
            o = QuadraticSurd.of(other)
        except TypeError:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        return self * o.conjugate() * QuadraticSurd(1 / n)

    def __rtruediv__(self, other):
        return QuadraticSurd.of(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return QuadraticSurd(1) / (self ** (-k))
        out = QuadraticSurd(1)
        for _ in range(k):
            out = out * self
        return out

    def sign(self) -> int:
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        lhs, rhs = a * a, b * b * self.d
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def _cmp(self, other) -> int:
        return (self - QuadraticSurd.of(other)).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadraticSurd(other)
        if not isinstance(other, QuadraticSurd):
            return NotImplemented
        return (self.a, self.b, self.d) == (other.a, other.b, other.d)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def floor(self) -> int:
        """Exact floor."""
        if self.b == 0:
            return math.floor(self.a)
        # (A + B sqrt d)/M with integers, M > 0
        m = math.lcm(self.a.denominator, self.b.denominator)
        A, B = int(self.a * m), int(self.b * m)
        root = math.isqrt(B * B * self.d)  # sqrt(B^2 d) is irrational here
        if B > 0:
            return (A + root) // m
        return (A - root - 1) // m

    def __str__(self):
        if self.b == 0:
            return format_fraction(self.a)
        coeff = abs(self.b)
        body = "√" + str(self.d) if coeff == 1 else f"{format_fraction(coeff)}√{self.d}"
        sign = "-" if self.b < 0 else "+"
        if self.a == 0:
            return ("-" if self.b < 0 else "") + body
        return f"{format_fraction(self.a)}{sign}{body}"

    def __repr__(self):
        return f"QuadraticSurd({self})"

    def to_json(self) -> dict:
        return {"a": format_fraction(self.a), "b": format_fraction(self.b), "d": self.d}

    @classmethod
    def from_json(cls, data: dict) -> QuadraticSurd:
        return cls(parse_fraction(data["a"]), parse_fraction(data["b"]), int(data["d"]))


def surd_roots(trace: int, det: int) -> tuple[QuadraticSurd, QuadraticSurd]:
    """Both roots of ``x^2 - trace*x + det``, larger first."""
    disc = Fraction(trace) ** 2 - 4 * Fraction(det)
    if disc < 0:
        raise ComplexRootsError(
            f"x^2 - {trace}x + {det} has complex roots (discriminant {disc})"
        )
    half = Fraction(trace) / 2
    root = QuadraticSurd.sqrt(disc) * Fraction(1, 2)
    return half + root, half - root


# --------------------------------------------------------------------------
# Continued fractions


@dataclass(frozen=True)
class PeriodicCF:
    head: tuple[int, ...]
    period: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(int(t) for t in self.head))
        object.__setattr__(self, "period", tuple(int(t) for t in self.period))
        if any(t <= 0 for t in self.period):
            raise ValueError("period terms must be positive")
        if not self.head and not self.period:
            raise ValueError("empty continued fraction")

    def terms(self) -> Iterator[int]:
        yield from self.head
        while self.period:
            yield from self.period

    def is_finite(self) -> bool:
        return not self.period

    def __str__(self):
        parts = [str(t) for t in self.head]
        if self.period:
            parts.append("(" + ", ".join(map(str, self.period)) + ")")
        if len(parts) == 1:
            return f"[{parts[0]}]"
        return f"[{parts[0]}; " + ", ".join(parts[1:]) + "]"

    def to_json(self) -> dict:
        return {"head": list(self.head), "period": list(self.period)}

    @classmethod
    def from_json(cls, data: dict) -> PeriodicCF:
        return cls(tuple(data["head"]), tuple(data["period"]))


def _rational_cf(x: Fraction) -> PeriodicCF:
    terms = []
    n, d = x.numerator, x.denominator
    while d:
        q, r = divmod(n, d)
        terms.append(q)
        n, d = d, r
    # canonical form: last term >= 2 when there is more than one term
    if len(terms) > 1 and terms[-1] == 1:
        terms[-2] += 1
        terms.pop()
    return PeriodicCF(tuple(terms))


def cf_expand(x) -> PeriodicCF:
    """Continued fraction of a rational or real quadratic irrational.

    The period is found by detecting a repeated ``(P, Q)`` state of the
    complete quotient ``(P + sqrt(D))/Q``.
    """
    x = QuadraticSurd.of(x)
    if x.is_rational():
        return _rational_cf(x.a)
    m = math.lcm(x.a.denominator, x.b.denominator)
    A, B = int(x.a * m), int(x.b * m)
    if B > 0:
        P, Q = A, m
    else:
        P, Q = -A, -m
    D = B * B * x.d
    if (D - P * P) % Q:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    root = math.isqrt(D)
    seen: dict[tuple[int, int], int] = {}
    terms: list[int] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(terms)
        if Q > 0:
            t = (P + root) // Q
        else:
            t = (P + root + 1) // Q
        terms.append(t)
        P = t * Q - P
        Q = (D - P * P) // Q
    start = seen[(P, Q)]
    return PeriodicCF(tuple(terms[:start]), tuple(terms[start:]))


def cf_convergent(cf: PeriodicCF, k: int) -> Fraction:
    """The k-th convergent; a finite expansion saturates at its value."""
    if k < 0:
        raise ValueError("convergent index must be nonnegative")
    h_prev, h = 0, 1
    k_prev, kk = 1, 0
    for i, t in enumerate(cf.terms()):
        h_prev, h = h, t * h + h_prev
        k_prev, kk = kk, t * kk + k_prev
        if i == k:
            break
    return Fraction(h, kk)


def scaling_cf(n_star: int) -> PeriodicCF:
    """``[n+1; (1, n)]`` written with its minimal period."""
    if n_star < 1:
        raise ValueError("n* must be positive")
    period = (1,) if n_star == 1 else (1, n_star)
    return PeriodicCF((n_star + 1,), period)
