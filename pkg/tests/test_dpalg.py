import math
from fractions import Fraction

from dpderham.dpalg import (
    CoeffTarget,
    DividedPowerPoly,
    RationalPoly,
    dp_coeff_change,
    dp_embed_rational,
    dp_partial,
    dp_pullback,
    field_realize,
)
from dpderham.ordinals import OrdinalMap, compose


def test_divided_power_product_rule():
    # x^[a] * x^[b] = C(a+b, a) x^[a+b]
    for a in range(5):
        for b in range(5):
            x_a = DividedPowerPoly.var(1, 1, a)
            x_b = DividedPowerPoly.var(1, 1, b)
            expected = DividedPowerPoly.var(1, 1, a + b).scale(math.comb(a + b, a))
            assert x_a * x_b == expected


def test_ring_axioms_on_samples():
    f = DividedPowerPoly(2, {(1, 2, 0): 3, (0, 0, 1): -1})
    g = DividedPowerPoly(2, {(0, 1, 1): 2})
    h = DividedPowerPoly(2, {(2, 0, 0): 1, (0, 0, 0): 5})
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == DividedPowerPoly.zero(2)


def test_partial_lowers_divided_power():
    # d/dx x^[N] = x^[N-1]
    f = DividedPowerPoly.var(1, 1, 4)
    assert dp_partial(1, f) == DividedPowerPoly.var(1, 1, 3)
    # theta is inert
    assert dp_partial(1, DividedPowerPoly.theta(1, 3)).is_zero()


def test_pullback_face_kills_variable():
    # vertex 1 of Delta^1 sees x_1 = theta, vertex 0 sees x_1 = 0
    f = DividedPowerPoly.var(1, 1, 2)
    assert dp_pullback(OrdinalMap.delta(0, 1), f) == DividedPowerPoly.theta(0, 2)
    assert dp_pullback(OrdinalMap.delta(1, 1), f).is_zero()


def test_pullback_collision_picks_up_binomials():
    # the long edge of Delta^2 sees both x_1 and x_2 as its own x_1
    f = DividedPowerPoly(2, {(0, 1, 1): 1})
    pulled = dp_pullback(OrdinalMap.delta(1, 2), f)
    assert pulled == DividedPowerPoly.var(1, 1, 2).scale(math.comb(2, 1))


def test_pullback_functorial():
    alpha = OrdinalMap(3, (0, 1, 3))
    beta = OrdinalMap(2, (0, 0, 1, 2))
    f = DividedPowerPoly(3, {(1, 1, 0, 2): 2, (0, 0, 2, 1): -3})
    lhs = dp_pullback(beta, dp_pullback(alpha, f))
    rhs = dp_pullback(compose(alpha, beta), f)
    assert lhs == rhs


def test_embed_sends_divided_power_to_monomial_over_factorial():
    f = DividedPowerPoly.var(2, 2, 3)
    emb = dp_embed_rational(f)
    expected = RationalPoly(2, {(0, 0, 3): Fraction(1, 6)})
    assert emb == expected


def test_field_realize_sets_theta_to_one():
    f = DividedPowerPoly.theta(1, 2) * DividedPowerPoly.var(1, 1, 1)
    realized = field_realize(f)
    # theta^[2] x_1 -> (1/2) x_1
    assert realized == RationalPoly(1, {(0, 1): Fraction(1, 2)})


def test_rational_poly_calculus_round_trip():
    f = RationalPoly(1, {(0, 3): Fraction(2, 5), (1, 1): Fraction(-1)})
    assert f.antiderivative(1).differentiate(1) == f


def test_rational_substitute_variable_alias():
    f = RationalPoly(2, {(0, 1, 1): Fraction(1)})
    g = f.substitute(2, ("var", 1))
    assert g == RationalPoly(2, {(0, 2, 0): Fraction(1)})
    h = f.substitute(1, Fraction(3))
    assert h == RationalPoly(2, {(0, 0, 1): Fraction(3)})


def test_coeff_change_targets():
    import pytest

    f = DividedPowerPoly(1, {(2, 1): 1, (0, 2): 3})
    rational = dp_coeff_change(f, CoeffTarget("rational-divided"))
    assert rational.terms[(0, 1)] == Fraction(1, 2)
    dropped = dp_coeff_change(f, CoeffTarget("drop-theta"))
    assert dropped.terms == {(0, 2): 3}
    # theta^[2] x_1 contributes p^2/2! at p = 2, which is 2-integral
    local = dp_coeff_change(f, CoeffTarget("localized", prime=3))
    assert local.terms[(0, 1)] == Fraction(9, 2)
    with pytest.raises(ValueError):
        CoeffTarget("localized", prime=6)
    realized = dp_coeff_change(f, CoeffTarget("field"))
    assert realized == field_realize(f)
