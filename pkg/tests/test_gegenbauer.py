import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special

from conftest import small_fractions
from dunklsphere.functions import gegenbauer_function, parse_g, polynomial, zero
from dunklsphere.gegenbauer import (
    CesaroParams,
    c_lambda,
    c_lambda_quadrature,
    cesaro_A,
    cesaro_mean,
    cesaro_ratios,
    coeff_b,
    expand,
    expand_exact,
    gegenbauer_at_one,
    gegenbauer_eval,
    gegenbauer_power_coeffs,
    gegenbauer_table,
    uniform_error,
    weighted_moment_ratio,
)

LAMS = [F(1, 2), F(1), F(3, 2), F(7, 2)]


@pytest.mark.parametrize("lam", [0.25, 0.5, 1.0, 2.5, 7.0])
def test_recurrence_matches_scipy(lam):
    t = np.linspace(-1, 1, 41)
    tab = gegenbauer_table(30, lam, t)
    for n in range(31):
        ref = special.eval_gegenbauer(n, lam, t)
        assert np.allclose(tab[n], ref, rtol=1e-11, atol=1e-11 * np.max(np.abs(ref)))


@pytest.mark.parametrize("lam", LAMS)
def test_power_coeffs_and_value_at_one(lam):
    t = np.linspace(-1, 1, 9)
    for n in range(12):
        c = gegenbauer_power_coeffs(n, lam)
        assert np.allclose(np.polynomial.polynomial.polyval(t, [float(a) for a in c]), gegenbauer_eval(n, float(lam), t), atol=1e-10)
        assert sum(c) == gegenbauer_at_one(n, lam)


def test_value_at_one_formula():
    assert gegenbauer_at_one(3, F(1)) == 4
    assert gegenbauer_at_one(5, F(1, 2)) == 1


@pytest.mark.parametrize("lam", [0.5, 1.0, 1.5, 3.5, 0.3])
def test_c_lambda(lam):
    ref = 1.0 / special.beta(0.5, lam + 0.5)
    assert c_lambda(lam) == pytest.approx(ref, rel=1e-14)
    assert c_lambda_quadrature(lam) == pytest.approx(ref, rel=1e-13)


def test_moment_ratio():
    # c_1 int t^2 sqrt(1 - t^2) dt = (2/pi)(pi/8)
    assert weighted_moment_ratio(2, 1) == F(1, 4)
    assert weighted_moment_ratio(3, 1) == 0


@pytest.mark.parametrize("lam", LAMS)
def test_normalization_identity(lam):
    for k in range(0, 11):
        b = expand_exact(gegenbauer_power_coeffs(k, lam), lam, 12)
        assert b[k] == lam / (k + lam)
        assert all(v == 0 for n, v in enumerate(b) if n != k)


@given(st.lists(small_fractions, min_size=1, max_size=13), st.sampled_from(LAMS))
def test_exact_and_quadrature_routes_agree(coeffs, lam):
    g = polynomial(coeffs)
    exact = expand(g, lam, 12, exact=True).coeffs
    quad = expand(g, lam, 12, exact=False).coeffs
    scale = max(1.0, max(abs(float(c)) for c in coeffs))
    assert np.allclose(exact, quad, atol=1e-12 * scale * 10)


def test_exp_coefficients_bessel():
    # lambda = 1: b_n(exp) = 2 I_{n+1}(1)
    series = expand(parse_g("exp"), 1, 12)
    ref = [2 * special.iv(n + 1, 1.0) for n in range(13)]
    # quadrature noise is absolute, around 1e-15
    assert np.max(np.abs(series.coeffs - ref)) <= 5e-15


def test_parity_zeros():
    b = expand(polynomial([0, 0, 0, 1]), 1, 5).meta["exact_coeffs"]
    assert b[0] == b[2] == b[4] == b[5] == 0
    assert b[1] != 0 and b[3] != 0


def test_abs_coefficients_converge_with_panels():
    g = parse_g("abs")
    a = expand(g, 1, 20, quad_order=80).coeffs
    b = expand(g, 1, 20, quad_order=200).coeffs
    assert np.allclose(a, b, atol=1e-14)
    assert np.all(np.abs(a[1::2]) <= 1e-14)


def test_coeff_b_single():
    assert coeff_b(gegenbauer_function(2, 1), 1, 2) == pytest.approx(1 / 3, abs=1e-14)


def test_cesaro_numbers():
    assert cesaro_A(3, F(2)) == 10
    assert cesaro_A(0, 0.7) == 1.0
    r = cesaro_ratios(6, 2.0)
    assert r[0] == 1.0
    for m in range(7):
        assert r[m] == pytest.approx(float(cesaro_A(6 - m, F(2)) / cesaro_A(6, F(2))), rel=1e-14)
    assert np.all(np.isfinite(cesaro_ratios(5000, 3.5)))


def test_cesaro_params_validation():
    with pytest.raises(ValueError):
        CesaroParams(delta=0, N=4)
    with pytest.raises(ValueError):
        CesaroParams(delta=1, N=-1)


def test_cesaro_mean_constant_exact():
    g = polynomial([3])
    series = expand(g, F(3, 2), 40)
    t = np.linspace(-1, 1, 11)
    assert np.allclose(cesaro_mean(series, CesaroParams(delta=2.5, N=40), t), 3.0, atol=1e-14)


def test_cesaro_error_decreases_for_abs():
    g = parse_g("abs")
    series = expand(g, 1, 256)
    errs = [uniform_error(g, series, CesaroParams(delta=2.0, N=N)) for N in (16, 32, 64, 128, 256)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_partial_sum_matches_function_for_polynomial():
    g = polynomial([1, -2, 0, 5, F(1, 3)])
    series = expand(g, F(1, 2), 6)
    t = np.linspace(-1, 1, 21)
    assert np.allclose(series.partial_sum(t), g(t), atol=1e-13)


def test_zero_function():
    assert not np.any(expand(zero(), 1, 8).coeffs)
