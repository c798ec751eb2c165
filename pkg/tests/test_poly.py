from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_fractions
from dunklsphere.field import QuadraticSurd, format_scalar, parse_rational, sqrt_of, surd
from dunklsphere.linalg import InconsistentSystemError, SingularSystemError, matmul, nullspace, rank, solve
from dunklsphere.poly import (
    MPoly,
    PolySyntaxError,
    dim_homogeneous,
    monomial_exponents,
    parse_poly,
    substitute_linear_form,
    to_text,
)


@st.composite
def polys(draw, dim=3, max_deg=4, max_terms=5):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(dim))
        terms[e] = draw(small_fractions)
    return MPoly(dim, terms)


# -- scalars ------------------------------------------------------------------

def test_surd_arithmetic():
    a = surd(1, 1, 3)
    assert a * surd(1, -1, 3) == -2
    assert a * a.inverse() == 1
    assert surd(2, 0, 3) == F(2) and isinstance(surd(2, 0, 3), F)
    assert sqrt_of(12) == surd(0, 2, 3)
    assert sqrt_of(9) == 3
    assert surd(0, 1, 3) > F(17, 10) and surd(0, 1, 3) < F(7, 4)


@given(small_fractions, small_fractions, small_fractions, small_fractions)
def test_surd_field_laws(a, b, c, d):
    x, y = surd(a, b, 3), surd(c, d, 3)
    assert (x + y) - y == x
    assert x * y == y * x
    if y != 0:
        assert (x / y) * y == x
    assert abs(float(x * y) - float(x) * float(y)) <= 1e-9 * (1 + abs(float(x) * float(y)))


def test_rational_text():
    assert parse_rational("1/2") == F(1, 2)
    assert parse_rational("-3") == -3
    assert parse_rational("0.25") == F(1, 4)
    assert format_scalar(F(-3, 4)) == "-3/4"
    assert format_scalar(surd(1, 2, 3)) == "(1+2*sqrt(3))"


# -- polynomials ----------------------------------------------------------------

def test_parse_examples():
    p = parse_poly("2*x1^2*x2 - 1/3*x3")
    assert p == MPoly(3, {(2, 1, 0): 2, (0, 0, 1): F(-1, 3)})
    assert to_text(p) == "2*x1^2*x2 - 1/3*x3"
    assert parse_poly("(x1 + x2)^2", 2) == parse_poly("x1^2 + 2*x1*x2 + x2^2", 2)
    assert parse_poly("0", 2).is_zero()


@pytest.mark.parametrize("bad", ["x1 +", "x0", "2**x1", "x1^-1", "(x1", "y1"])
def test_parse_errors(bad):
    with pytest.raises(PolySyntaxError):
        parse_poly(bad, 2)


def test_dimension_too_small():
    with pytest.raises(ValueError):
        parse_poly("x3", 2)


@given(polys())
def test_text_round_trip(p):
    assert parse_poly(to_text(p), 3) == p


def test_surd_coefficients_round_trip():
    p = MPoly(2, {(1, 0): surd(1, 2, 3), (0, 2): F(1, 2)})
    assert parse_poly(to_text(p), 2) == p


@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p - p == MPoly.zero(3)


@given(polys(), polys(), st.integers(0, 2))
def test_product_rule(p, q, i):
    assert (p * q).partial(i) == p.partial(i) * q + p * q.partial(i)


@given(polys(), st.lists(small_fractions, min_size=3, max_size=3))
def test_evaluate_is_ring_homomorphism(p, x):
    q = p * p + p
    assert q.evaluate(x) == p.evaluate(x) ** 2 + p.evaluate(x)


def test_monomial_counts():
    for n in range(8):
        for d in (2, 3, 4):
            assert len(monomial_exponents(n, d)) == dim_homogeneous(n, d)
    assert monomial_exponents(2, 2) == ((2, 0), (1, 1), (0, 2))


def test_substitute_linear_form():
    p = substitute_linear_form([1, 0, 1], [F(1, 2), F(1, 3)])
    assert p == parse_poly("1 + 1/4*x1^2 + 1/3*x1*x2 + 1/9*x2^2", 2)


def test_evaluate_many_matches_exact():
    p = parse_poly("x1^3 - 2*x1*x2 + 1/7", 2)
    pts = np.array([[0.3, -0.4], [1.0, 2.0]])
    got = p.evaluate_many(pts)
    assert np.allclose(got, [float(p.evaluate(list(map(F, map(str, r))))) for r in pts])


# -- exact elimination ------------------------------------------------------------

def test_nullspace_known():
    A = [[F(1), F(2), F(3)], [F(2), F(4), F(6)]]
    ns = nullspace(A, 3)
    assert len(ns) == 2
    for vec in ns:
        assert [r[0] for r in matmul(A, [[x] for x in vec])] == [0, 0]
    assert rank(A) == 1


@given(st.lists(st.lists(small_fractions, min_size=4, max_size=4), min_size=1, max_size=4))
def test_nullspace_annihilates(rows):
    ns = nullspace(rows, 4)
    assert len(ns) + rank(rows) == 4
    for v in ns:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def test_solve_and_errors():
    A = [[F(2), F(1)], [F(1), F(3)]]
    X = solve(A, [[F(1)], [F(2)]])
    assert X == [[F(1, 5)], [F(3, 5)]]
    with pytest.raises(InconsistentSystemError):
        solve([[F(1), F(1)], [F(2), F(2)]], [[F(1)], [F(3)]])
    with pytest.raises(SingularSystemError):
        solve([[F(1), F(1)], [F(2), F(2)]], [[F(1)], [F(2)]])


def test_solve_over_surds():
    r3 = surd(0, 1, 3)
    A = [[F(1), r3], [r3, F(2)]]
    X = solve(A, [[F(1)], [F(0)]])
    assert A[0][0] * X[0][0] + A[0][1] * X[1][0] == 1
    assert A[1][0] * X[0][0] + A[1][1] * X[1][0] == 0
    assert isinstance(X[0][0], (F, QuadraticSurd))
