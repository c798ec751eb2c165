import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_fractions
from dunklsphere.functions import gegenbauer_function, parse_g, polynomial, zero
from dunklsphere.fundamentality import (
    DegenerateConfigurationError,
    cesaro_matrix,
    cesaro_ratio,
    check_fundamentality,
    classify,
    richardson,
    row_support,
    summability_limits,
)
from dunklsphere.gegenbauer import expand, expand_exact
from dunklsphere.roots import z2

LAM = F(1)

# b_n(exp) at lambda = 1 for n <= 9, frozen from the quadrature route and
# cross-checked against 2 I_{n+1}(1) (modified Bessel functions)
EXP_B = [
    1.1303182079849700,
    0.27149533953407656,
    0.044336849848663804,
    0.0054742404420937326,
    0.00054292631191394375,
    4.4977322954295146e-05,
    3.1984364624019905e-06,
    1.9921248066727952e-07,
    1.1036771725517344e-08,
    5.5058960796737102e-10,
]


def test_c3_not_fundamental():
    rep = check_fundamentality(gegenbauer_function(3, LAM), LAM, n_max=32)
    assert rep.overall == "not-fundamental"
    assert rep.witnesses == [n for n in range(33) if n != 3]
    assert rep.coeffs[3] == pytest.approx(float(LAM / (3 + LAM)), abs=1e-15)
    assert rep.exact_coeffs[3] == LAM / (3 + LAM)


def test_zero_function():
    rep = check_fundamentality(zero(), LAM, n_max=32)
    assert rep.witnesses == list(range(33))
    assert rep.scale == 1.0


def test_exp_fundamental_up_to_nine():
    rep = check_fundamentality(parse_g("exp"), LAM, n_max=9)
    assert rep.fundamental
    assert rep.overall == "fundamental-up-to-n_max"
    assert np.allclose(rep.coeffs, EXP_B, rtol=1e-12, atol=5e-15)
    assert all(b > 0 for b in rep.coeffs)


def test_spec_input():
    rep = check_fundamentality(parse_g("exp"), z2(2, [F(1, 2), F(1, 2)]), n_max=5)
    assert rep.lam == 1.0


def test_degenerate_rejected():
    with pytest.raises(DegenerateConfigurationError):
        check_fundamentality(parse_g("exp"), z2(2, [0, 0]))
    with pytest.raises(DegenerateConfigurationError):
        check_fundamentality(parse_g("exp"), 0)


@given(st.lists(st.floats(-1, 1, allow_nan=False), max_size=20), st.floats(1e-12, 1e-2), st.floats(0.1, 10))
def test_report_invariants(coeffs, thr, scale):
    verdicts, witnesses = classify(coeffs, thr, scale)
    assert witnesses == [n for n, v in enumerate(verdicts) if v == "numerically-zero"]
    assert all((abs(b) <= thr * scale) == (v == "numerically-zero") for b, v in zip(coeffs, verdicts))


@given(st.sampled_from(["exp", "abs", "runge:4", "gegenbauer:3", "zero", "poly:1,0,-2,0,1"]), st.floats(-3, 3))
def test_scale_invariance(name, log_c):
    g = parse_g(name, LAM)
    c = 10.0**log_c
    base = check_fundamentality(g, LAM, n_max=16).verdicts
    assert check_fundamentality(g.scaled(c), LAM, n_max=16).verdicts == base


@given(st.lists(small_fractions, min_size=1, max_size=13), st.sampled_from([F(1, 2), F(1), F(7, 2)]))
def test_quadrature_verdicts_match_exact(coeffs, lam):
    g = polynomial(coeffs)
    exact = expand_exact(g.poly, lam, 12)
    quad = check_fundamentality(g, lam, n_max=12, exact=False)
    if not any(coeffs):
        assert quad.witnesses == list(range(13))
        return
    cut = quad.zero_threshold * quad.scale
    for n, v in enumerate(quad.verdicts):
        if exact[n] == 0:
            assert v == "numerically-zero"
        elif abs(exact[n]) > 10 * cut:
            assert v == "nonzero"


def test_report_dict():
    d = check_fundamentality(gegenbauer_function(2, LAM), LAM, n_max=4).to_dict()
    assert d["overall"] == "not-fundamental"
    assert d["witnesses"] == [0, 1, 3, 4]
    assert d["exact_coefficients"] == ["0", "0", "1/3", "0", "0"]


# -- summability --------------------------------------------------------------

def test_constant_matrix_limit():
    lims = summability_limits(lambda n, m: 2.5, 3)
    assert all(est.converged and est.value == pytest.approx(2.5, abs=1e-14) for est in lims)


def test_rational_matrix_limit():
    b = [1.0, -0.5, 0.25, 3.0]
    lims = summability_limits(lambda n, m: b[m] * n / (n + 1), 3)
    for est in lims:
        assert abs(est.value - b[est.m]) <= 1e-8
        assert est.converged


def test_divergent_column_flagged():
    lims = summability_limits(lambda n, m: float(n) if m == 1 else 1.0, 2)
    assert lims[0].converged and lims[2].converged
    assert not lims[1].converged


def test_oscillating_column_flagged():
    lims = summability_limits(lambda n, m: math.sin(n), 0)
    assert not lims[0].converged


def test_cesaro_instance():
    series = expand(parse_g("exp"), LAM, 40)
    entry = cesaro_matrix(series, 2.0)
    lims = summability_limits(entry, 5)
    for est in lims:
        assert abs(est.value - series.coeffs[est.m]) <= 1e-8
    assert row_support(entry, 10, 40) == 11
    assert entry(3, 7) == 0.0


def test_cesaro_ratio():
    assert cesaro_ratio(5, 0, 2.0) == 1.0
    assert cesaro_ratio(4, 5, 2.0) == 0.0
    assert cesaro_ratio(6, 2, 2.0) == pytest.approx(5 * 6 / (7 * 8))


def test_richardson_exact_for_polynomial_in_h():
    # f(h) = 3 + h + h^2 sampled at h = 1, 1/2, 1/4: two levels remove both terms
    vals = [3 + h + h * h for h in (1.0, 0.5, 0.25)]
    assert richardson(vals)[2][2] == pytest.approx(3.0, abs=1e-14)
