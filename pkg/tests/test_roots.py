from fractions import Fraction as F

import pytest

from dunklsphere.field import surd
from dunklsphere.fundamentality import DegenerateConfigurationError, lambda_kappa
from dunklsphere.roots import (
    GroupTooLargeError,
    build_standard,
    count_reflections,
    dihedral,
    dot,
    generate_group,
    make_spec,
    reflect,
    validate,
    with_opposite_positive,
    z2,
)


@pytest.mark.parametrize(
    "spec, order",
    [
        (z2(2, [F(1, 2), F(1, 2)]), 4),
        (z2(3, [1, 1, 1]), 8),
        (dihedral(3, [F(1, 2)]), 6),
        (dihedral(4, [F(1, 2), 1]), 8),
        (dihedral(5, [F(1, 2)]), 10),
        (dihedral(6, [1, 2]), 12),
    ],
)
def test_standard_systems_valid(spec, order):
    assert validate(spec).ok
    group = generate_group(spec)
    assert group.order == order
    # the reflections in G are exactly the sigma_v, v in R_+
    assert count_reflections(group) == len(spec.positive)


def test_positive_half():
    spec = dihedral(4, [1, 2])
    assert len(spec.positive) == len(spec.roots) // 2
    for v in spec.positive:
        assert dot(spec.functional, v) > 0


def test_i2_3_roots_exact_and_equal_length():
    spec = dihedral(3, [1])
    assert spec.exact
    lengths = {dot(v, v) for v in spec.roots}
    assert lengths == {4}
    assert any(surd(0, 1, 3) in v for v in spec.roots)


def test_reflection_is_involution():
    v = (F(1), F(2))
    x = (F(3), F(-5, 7))
    assert reflect(v, reflect(v, x)) == x
    assert reflect(v, v) == (-1, -2)


def test_axiom_violations_reported():
    bad = make_spec([(1, 0), (-1, 0), (1, 1), (-1, -1)], [1, 1, 1, 1])
    rep = validate(bad)
    assert not rep.ok
    assert {v.axiom for v in rep.violations} == {"axiom2"}

    missing = make_spec([(1, 0), (0, 1), (0, -1)], [1, 1, 1])
    assert "axiom1" in {v.axiom for v in validate(missing).violations}

    multiple = make_spec([(1, 0), (-1, 0), (2, 0), (-2, 0)], [1, 1, 1, 1])
    assert "axiom1" in {v.axiom for v in validate(multiple).violations}


def test_kappa_invariance_violation():
    # I2(3): all three root lines form one orbit, so kappa must be constant
    roots = list(dihedral(3, [1]).roots)
    ks = [1, 1, 2, 2, 1, 1]
    rep = validate(make_spec(roots, ks))
    assert "kappa" in {v.axiom for v in rep.violations}


def test_negative_kappa_rejected():
    with pytest.raises(ValueError):
        z2(2, [F(-1, 2), 1])


def test_wrong_kappa_count():
    with pytest.raises(ValueError):
        dihedral(4, [1])
    with pytest.raises(ValueError):
        build_standard("z2", d=3, kappa=[1, 1])
    with pytest.raises(ValueError):
        build_standard("b7", d=3, kappa=[1, 1, 1])


def test_opposite_positive_is_valid():
    spec = with_opposite_positive(dihedral(4, [1, 2]))
    assert validate(spec).ok
    assert set(spec.positive) == {tuple(-a for a in v) for v in dihedral(4, [1, 2]).positive}


def test_group_cap():
    with pytest.raises(GroupTooLargeError):
        generate_group(dihedral(12, [1, 1]), cap=10)


@pytest.mark.parametrize(
    "spec, lam",
    [
        (z2(3, [1, 1, 1]), F(7, 2)),
        (z2(2, [F(1, 2), F(1, 2)]), F(1)),
        (z2(3, [0, 0, 0]), F(1, 2)),
        (dihedral(3, [F(1, 2)]), F(3, 2)),
        (dihedral(4, [F(1, 2), 1]), F(3)),
    ],
)
def test_lambda_kappa(spec, lam):
    assert lambda_kappa(spec) == lam


def test_lambda_kappa_rejects_planar_zero():
    with pytest.raises(DegenerateConfigurationError, match="kappa must be nonzero"):
        lambda_kappa(z2(2, [0, 0]))
