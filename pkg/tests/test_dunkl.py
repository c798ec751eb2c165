from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import nonneg_kappa, small_fractions
from dunklsphere.dunkl import DunklContext, divide_by_linear
from dunklsphere.field import surd
from dunklsphere.fundamentality import lambda_kappa
from dunklsphere.poly import MPoly, parse_poly
from dunklsphere.roots import dihedral, generate_group, make_spec, with_opposite_positive, z2

SYSTEMS = [
    z2(2, [F(1, 2), F(1, 2)]),
    z2(2, [F(1, 3), 2]),
    z2(3, [1, F(1, 2), 0]),
    dihedral(3, [F(1, 2)]),
    dihedral(4, [F(1, 2), 1]),
    dihedral(6, [F(1, 3), 1]),
]


@st.composite
def polys(draw, dim, max_deg=4, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        terms[tuple(draw(st.integers(0, max_deg)) for _ in range(dim))] = draw(small_fractions)
    return MPoly(dim, terms)


def test_example_values():
    ctx = DunklContext(z2(2, [F(1, 2), F(1, 2)]))
    assert ctx.apply(0, parse_poly("x1", 2)) == MPoly.const(2, 2)
    assert ctx.apply(1, parse_poly("x1", 2)).is_zero()


@given(st.lists(st.integers(0, 5), min_size=3, max_size=3), st.lists(nonneg_kappa, min_size=3, max_size=3), st.integers(0, 2))
def test_z2_closed_form(exp, kappa, i):
    # D_i x^a = (a_i + 2 kappa_i [a_i odd]) x^{a - e_i}
    ctx = DunklContext(z2(3, kappa))
    got = ctx.apply(i, MPoly.monomial(exp))
    if exp[i] == 0:
        assert got.is_zero()
        return
    lower = list(exp)
    lower[i] -= 1
    factor = exp[i] + (2 * kappa[i] if exp[i] % 2 else 0)
    assert got == MPoly.monomial(lower, factor)


@pytest.mark.parametrize("spec", SYSTEMS, ids=lambda s: f"{s.family}{s.params or s.dim}")
def test_commuting_on_random_polys(spec):
    ctx = DunklContext(spec)

    @given(polys(spec.dim))
    def check(p):
        for i in range(spec.dim):
            for j in range(i + 1, spec.dim):
                assert ctx.apply(i, ctx.apply(j, p)) == ctx.apply(j, ctx.apply(i, p))

    check()


@pytest.mark.parametrize("spec", SYSTEMS, ids=lambda s: f"{s.family}{s.params or s.dim}")
def test_laplacian_of_norm_squared(spec):
    # Delta_kappa |x|^2 = 4 (lambda_kappa + 1), independent of root normalization
    ctx = DunklContext(spec)
    r2 = sum((MPoly.var(i, spec.dim) ** 2 for i in range(spec.dim)), MPoly.zero(spec.dim))
    gamma = sum((spec.kappa_of(v) for v in spec.positive), F(0))
    assert ctx.laplacian(r2) == MPoly.const(2 * spec.dim + 4 * gamma, spec.dim)
    if not (spec.dim == 2 and gamma == 0):
        assert 2 * spec.dim + 4 * gamma == 4 * (lambda_kappa(spec) + 1)


@pytest.mark.parametrize("spec", SYSTEMS[3:], ids=["I2(3)", "I2(4)", "I2(6)"])
def test_laplacian_is_g_equivariant(spec):
    ctx = DunklContext(spec)
    group = generate_group(spec)
    p = parse_poly("x1^4*x2 - 3*x1*x2^2 + 1/2*x2^3", 2)
    lp = ctx.laplacian(p)
    for g in group.elements:
        assert ctx.laplacian(p.linear_change(g)) == lp.linear_change(g)


@pytest.mark.parametrize("spec", SYSTEMS, ids=lambda s: f"{s.family}{s.params or s.dim}")
def test_leibniz_with_invariant_factor(spec):
    ctx = DunklContext(spec)
    r2 = sum((MPoly.var(i, spec.dim) ** 2 for i in range(spec.dim)), MPoly.zero(spec.dim))
    h = MPoly.monomial((2, 1) + (0,) * (spec.dim - 2)) + MPoly.var(spec.dim - 1, spec.dim)
    for i in range(spec.dim):
        assert ctx.apply(i, r2 * h) == r2.partial(i) * h + r2 * ctx.apply(i, h)


def test_kappa_zero_is_gradient():
    ctx = DunklContext(dihedral(3, [0]))
    p = parse_poly("x1^3*x2 + x2^5 - 2", 2)
    assert ctx.apply(0, p) == p.partial(0)
    assert ctx.apply(1, p) == p.partial(1)


@pytest.mark.parametrize("spec", SYSTEMS, ids=lambda s: f"{s.family}{s.params or s.dim}")
def test_positive_choice_independence(spec):
    a, b = DunklContext(spec), DunklContext(with_opposite_positive(spec))
    p = MPoly.monomial((3, 2) + (1,) * (spec.dim - 2)) + MPoly.monomial((0, 5) + (0,) * (spec.dim - 2), F(2, 3))
    for i in range(spec.dim):
        assert a.apply(i, p) == b.apply(i, p)


def test_float_route_matches_surd_route():
    exact = dihedral(3, [F(1, 2)])
    r3 = 3 ** 0.5
    fl = make_spec([(2.0, 0.0), (-2.0, 0.0), (1.0, r3), (-1.0, -r3), (-1.0, r3), (1.0, -r3)], [0.5] * 6)
    ce, cf = DunklContext(exact), DunklContext(fl)
    for n in range(1, 7):
        for i in range(2):
            me, mf = ce.matrix(i, n), cf.matrix(i, n)
            for re, rf in zip(me, mf):
                for a, b in zip(re, rf):
                    assert abs(float(a) - float(b)) <= 1e-11


def test_division_exact_and_remainder():
    # (x1^2 - x2^2) / (x1 - x2) = x1 + x2
    terms = parse_poly("x1^2 - x2^2", 2).terms
    q, r = divide_by_linear(terms, (F(1), F(-1)))
    assert MPoly(2, q) == parse_poly("x1 + x2", 2)
    assert not r
    _, r = divide_by_linear(parse_poly("x1^2 + x2^2", 2).terms, (F(1), F(-1)))
    assert r


def test_division_over_surds():
    v = (F(1), surd(0, 1, 3))
    lin = MPoly.linear_form(v)
    p = lin * parse_poly("x1^2 - 2*x2 + 5", 2)
    q, r = divide_by_linear(p.terms, v)
    assert not r and MPoly(2, q) == parse_poly("x1^2 - 2*x2 + 5", 2)


def test_dimension_mismatch():
    ctx = DunklContext(z2(2, [1, 1]))
    with pytest.raises(ValueError):
        ctx.apply(0, parse_poly("x3", 3))
    with pytest.raises(IndexError):
        ctx.apply(2, parse_poly("x1", 2))
