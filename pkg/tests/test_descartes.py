import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from apollonian.descartes import (
    D_MATRICES,
    DescartesQuad,
    ExtendedQuad,
    GeneratorWord,
    S_MATRICES,
    apply_word,
    check_descartes,
    dual,
    dual_extended,
    dual_form,
    extend_reflect,
    homogeneous_identity,
    matmul,
    place_quad,
    reflect_fourth,
    solve_fourth,
    word_eigen,
)
from apollonian.errors import NonRealizableError, PreconditionError
from apollonian.geometry import is_tangent
from apollonian.numerics import QuadraticSurd

ROOTS = [(-1, 2, 2, 3), (-2, 3, 6, 7), (-3, 5, 8, 8), (-6, 11, 14, 15), (0, 0, 1, 1), (0, 1, 1, 4)]


@st.composite
def integral_quads(draw):
    q = DescartesQuad(*draw(st.sampled_from(ROOTS)))
    for i in draw(st.lists(st.integers(0, 3), max_size=6)):
        q = reflect_fourth(q, i)
    return q


def test_solve_fourth_values():
    s = solve_fourth(2, 2, 3)
    assert (s.larger, s.smaller) == (15, -1)
    s = solve_fourth(0, 1, 1)
    assert (s.larger, s.smaller) == (4, 0)
    s = solve_fourth(3, 6, 7)
    assert (s.larger, s.smaller) == (34, -2)
    s = solve_fourth(1, 1, 1)
    assert not s.rational
    assert s.larger == QuadraticSurd(3, 2, 3) and s.smaller == QuadraticSurd(3, -2, 3)
    with pytest.raises(NonRealizableError):
        solve_fourth(-1, -1, 1)


@given(st.integers(1, 60), st.integers(1, 60), st.integers(1, 60))
def test_solve_fourth_satisfies_descartes(a, b, c):
    s = solve_fourth(a, b, c)
    if s.rational:
        assert check_descartes(a, b, c, s.larger) and check_descartes(a, b, c, s.smaller)
    else:
        # 2 sum k^2 - (sum k)^2 vanishes exactly in Q(sqrt d)
        for k4 in (s.larger, s.smaller):
            ks = [QuadraticSurd.of(a), QuadraticSurd.of(b), QuadraticSurd.of(c), k4]
            total = ks[0] + ks[1] + ks[2] + ks[3]
            assert sum((k * k for k in ks), QuadraticSurd.of(0)) * 2 == total * total


def test_reflect_examples():
    assert reflect_fourth((-1, 2, 2, 3), 0).values == (15, 2, 2, 3)
    assert reflect_fourth((4, 1, 1, 0), 0).values == (0, 1, 1, 0)


@given(integral_quads(), st.integers(0, 3))
def test_reflection_is_involution(q, i):
    assert reflect_fourth(reflect_fourth(q, i), i) == q


def test_dual_examples():
    assert dual((4, 1, 1, 0)).values == (-1, 2, 2, 3)
    assert dual((-1, 2, 2, 3)).values == (4, 1, 1, 0)
    assert dual((0, 1, 1, 4)).values == (3, 2, 2, -1)


@given(integral_quads())
def test_dual_involution_and_form(q):
    assert dual(dual(q)) == q
    assert dual_form(q.values) == 0
    assert check_descartes(*dual(q).values)


def test_rejections():
    with pytest.raises(NonRealizableError):
        DescartesQuad(1, 2, 3, 4)
    with pytest.raises(NonRealizableError):
        DescartesQuad(1, -2, -2, -3)  # satisfies the relation but has three negatives


def test_generators_are_involutions_and_unimodular():
    ident = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
    for m in S_MATRICES.values():
        assert matmul(m, m) == ident
    for name, m in D_MATRICES.items():
        assert abs(round(np.linalg.det(np.array(m, dtype=float)))) == 1, name


def test_apply_word_examples():
    assert apply_word("D3^2", (4, 1, 1, 0)).quad.values == (25, 9, 4, 0)
    assert apply_word("D3 D3 D2", (4, 1, 1, 0)).quad.values == (64, 25, 9, 0)
    assert GeneratorWord.parse("D3D3D2") == GeneratorWord.parse("D3^2 D2")
    with pytest.raises(PreconditionError):
        apply_word("D3", (1, 4, 1, 0))
    with pytest.raises(ValueError):
        GeneratorWord.parse("X9")


def test_word_eigen_exact_forms():
    spec = word_eigen("D3 D3")
    assert spec.charpoly[0] == 1
    phi2 = ((3 + math.sqrt(5)) / 2) ** 2
    assert abs(spec.eigenvalues[0] - phi2) < 1e-12
    assert len(spec.exact) == 4


@given(st.lists(st.integers(-10**4, 10**4), min_size=2, max_size=2))
def test_homogeneous_identity(pair):
    a, b = pair
    assert homogeneous_identity(a, b, -a - b)
    assert homogeneous_identity(Fraction(a, 7), Fraction(b, 3), -Fraction(a, 7) - Fraction(b, 3))


def test_homogeneous_identity_needs_zero_sum():
    with pytest.raises(PreconditionError):
        homogeneous_identity(1, 2, 3)


@given(integral_quads())
def test_place_quad_tangent(q):
    if sum(1 for k in q.values if k == 0) > 1:
        return
    ext = place_quad(*q.values)
    assert ext.curvatures == q.values
    geo = ext.geometric()
    for i in range(4):
        for j in range(i + 1, 4):
            assert is_tangent(geo[i], geo[j])


@given(integral_quads(), st.integers(0, 3))
def test_extend_reflect_is_linear_and_valid(q, i):
    if sum(1 for k in q.values if k == 0) > 1:
        return
    ext = place_quad(*q.values)
    out = extend_reflect(ext, i)  # validates tangency internally
    assert out.curvatures == reflect_fourth(q, i).values
    assert extend_reflect(out, i) == ext


def test_dual_extended_curvatures():
    ext = place_quad(-1, 2, 2, 3)
    d = dual_extended(ext)
    assert tuple(c.curvature for c in d) == (4, 1, 1, 0)


def test_extended_quad_scaled():
    ext = place_quad(-1, 2, 2, 3)
    assert ext.scaled(2).curvatures == (Fraction(-1, 2), 1, 1, Fraction(3, 2))
    assert isinstance(ext, ExtendedQuad)


def test_random_words_keep_descartes():
    rng = random.Random(3)
    for _ in range(200):
        q = DescartesQuad(-1, 2, 2, 3)
        word = " ".join(f"S{rng.randint(1, 4)}" for _ in range(rng.randint(1, 10)))
        out = apply_word(word, q).quad
        assert check_descartes(*out.values)
