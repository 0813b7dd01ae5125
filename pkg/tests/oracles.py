"""Independent reference computations used to derive and freeze expected
values.  Nothing here imports the code under test except plain data types
needed to state inputs."""

from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction

import numpy as np
import sympy
from sympy.ntheory.continued_fraction import continued_fraction_periodic


def cf_of_surd(a: Fraction, b: Fraction, d: int) -> tuple[list[int], list[int]]:
    """(head, period) of a + b sqrt(d) via sympy."""
    a, b = Fraction(a), Fraction(b)
    if b == 0 or d == 0:
        terms = continued_fraction_periodic(a.numerator, a.denominator)
        return list(terms), []
    q = math.lcm(a.denominator, b.denominator)
    big_a = int(a * q)
    big_b = int(b * q)
    s = 1 if big_b > 0 else -1
    terms = continued_fraction_periodic(big_a, q, big_b * big_b * d, s)
    if terms and isinstance(terms[-1], list):
        return [int(t) for t in terms[:-1]], [int(t) for t in terms[-1]]
    return [int(t) for t in terms], []


def mobius_float(m: tuple, z: complex, conjugating: bool = False) -> complex:
    a, b, c, d = (complex(x) for x in m)
    if conjugating:
        z = z.conjugate()
    return (a * z + b) / (c * z + d)


def circle_through(p1: complex, p2: complex, p3: complex) -> tuple[complex, float]:
    """Center and radius of the circle through three points (floats)."""
    ax, ay, bx, by, cx, cy = p1.real, p1.imag, p2.real, p2.imag, p3.real, p3.imag
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    center = complex(ux, uy)
    return center, abs(p1 - center)


def image_circle_float(m: tuple, center: complex, radius: float, conjugating: bool = False):
    pts = [center + radius * cmath.exp(1j * t) for t in (0.3, 2.1, 4.4)]
    return circle_through(*(mobius_float(m, p, conjugating) for p in pts))


def ford_set(max_q: int) -> set[tuple[Fraction, Fraction, Fraction]]:
    """Ford circles in [0, 1] as (x, y, r) with r = 1/(2 q^2), by brute force."""
    out = set()
    for q in range(1, max_q + 1):
        for p in range(0, q + 1):
            if math.gcd(p, q) == 1:
                r = Fraction(1, 2 * q * q)
                out.add((Fraction(p, q), r, r))
    return out


def brute_parents(f: Fraction) -> tuple[Fraction, Fraction]:
    """Farey neighbours of f with smaller denominators, by exhaustive search."""
    p, q = f.numerator, f.denominator
    left = right = None
    for b in range(1, q):
        for a in range(0, b + 1):
            if math.gcd(a, b) != 1:
                continue
            if q * a - p * b == -1:
                left = Fraction(a, b)
            if q * a - p * b == 1:
                right = Fraction(a, b)
    return left, right


def numeric_gasket(root_circles: list[tuple[float, complex]], bound: float) -> list[tuple[float, complex]]:
    """Float packing by circle inversion: the twin of a circle is its image in
    the circle through the three contact points of the other three.  Circles
    are (signed curvature, center); lines are not supported."""

    def contact(c1, c2):
        k1, z1 = c1
        k2, z2 = c2
        r1, r2 = 1 / k1, 1 / k2
        return z1 + (z2 - z1) * r1 / (r1 + r2)

    def collinear(a, b, c):
        return abs(((b - a).conjugate() * (c - a)).imag) < 1e-12 * (abs(b - a) * abs(c - a) + 1e-300)

    def mirror_image(pts, k, z):
        r = abs(1 / k)
        if collinear(*pts):
            # the mirror is a line: reflect the center across it
            a, b = pts[0], pts[1]
            u = (b - a) / abs(b - a)
            w = (z - a) / u
            return (abs(k), a + u * w.conjugate())
        mc, mr = circle_through(*pts)
        ring = [z + r * cmath.exp(1j * t) for t in (0.1, 2.2, 4.3)]
        imgs = [mc + mr * mr / (p - mc).conjugate() for p in ring]
        c, rad = circle_through(*imgs)
        return (1 / rad, c)

    found = {}

    def key(c):
        return (round(c[0], 6), round(c[1].real, 6), round(c[1].imag, 6))

    for c in root_circles:
        found[key(c)] = c
    stack = [(tuple(root_circles), None)]
    while stack:
        quad, newest = stack.pop()
        for i in range(4):
            if i == newest:
                continue
            others = [quad[j] for j in range(4) if j != i]
            pts = [contact(others[a], others[b]) for a, b in ((0, 1), (1, 2), (0, 2))]
            new = mirror_image(pts, *quad[i])
            if new[0] > bound + 1e-6:
                continue
            if newest is None and new[0] < quad[i][0] - 1e-9:
                continue
            if newest is not None and new[0] <= quad[i][0] + 1e-9:
                continue
            if key(new) in found:
                continue
            found[key(new)] = new
            stack.append((quad[:i] + (new,) + quad[i + 1:], i))
    return sorted(found.values(), key=lambda c: (round(c[0], 6), round(c[1].real, 6), round(c[1].imag, 6)))


def lorentz_bruteforce(quad) -> list[tuple[int, ...]]:
    """All orderings whose image under the integer matrix is Lorentzian."""
    mat = np.array([[1, -1, -1, -1], [0, 0, 0, 2], [0, 1, -1, 0], [1, 1, 2, 1]], dtype=object)
    good = set()
    for perm in itertools.permutations(quad):
        n = mat.dot(np.array(perm, dtype=object))
        if n[0] ** 2 + n[1] ** 2 + n[2] ** 2 == n[3] ** 2:
            good.add(tuple(int(x) for x in perm))
    return sorted(good)


def sympy_eigen(matrix) -> list[complex]:
    m = sympy.Matrix(matrix)
    vals = []
    for v, mult in m.eigenvals().items():
        vals.extend([complex(sympy.N(v, 40))] * mult)
    return sorted(vals, key=lambda z: (-abs(z), -z.real))


def triplet_from_root(matrix, levels: int, start=((0, 1), (1, 2), (1, 1))):
    """Apply an integer 2x2 matrix to (p, q) columns of a triplet, by hand."""
    (a, b), (c, d) = matrix
    out = [start]
    cur = start
    for _ in range(levels):
        nxt = []
        for p, q in cur:
            pp, qq = a * p + b * q, c * p + d * q
            g = math.gcd(pp, qq)
            pp, qq = pp // g, qq // g
            if qq < 0:
                pp, qq = -pp, -qq
            nxt.append((pp, qq))
        cur = tuple(nxt)
        out.append(cur)
    return out
