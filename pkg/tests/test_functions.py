from fractions import Fraction as F

import numpy as np
import pytest

from dunklsphere.functions import parse_g


def test_builtins():
    t = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])
    assert np.allclose(parse_g("exp")(t), np.exp(t))
    assert np.allclose(parse_g("abs")(t), np.abs(t))
    assert parse_g("abs").kinks == (0.0,)
    assert np.allclose(parse_g("runge:4")(t), 1 / (1 + 4 * t * t))
    assert np.allclose(parse_g("zero")(t), 0.0)


def test_poly_is_exact():
    g = parse_g("poly:1/2,0,-3")
    assert g.poly == (F(1, 2), F(0), F(-3))
    assert g.degree == 2
    assert np.allclose(g(np.array([2.0])), [0.5 - 12])


def test_gegenbauer_needs_lambda():
    with pytest.raises(ValueError):
        parse_g("gegenbauer:3")
    g = parse_g("gegenbauer:2", F(1))
    assert g.poly == (F(-1), F(0), F(4))


@pytest.mark.parametrize("bad", ["sin", "poly:", "exp:2", "poly:1,x"])
def test_unknown(bad):
    with pytest.raises(ValueError):
        parse_g(bad)


def test_scaled_keeps_exact_form():
    g = parse_g("poly:1,2").scaled(F(1, 1000))
    assert g.poly == (F(1, 1000), F(2, 1000))
