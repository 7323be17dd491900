from dpderham.dpalg import DividedPowerPoly, field_realize
from dpderham.derham import SimplexForm, exterior_d, form_pullback, wedge
from dpderham.integrate import (
    BoundSymbol,
    IntegralSpec,
    PrismForm,
    chain_int,
    definite_int,
    ez_strip,
    fiber_int_simplex,
    iterated_int,
    materialize,
    position_bound,
)
from dpderham.ordinals import (
    MaximalChain,
    OrdinalMap,
    chain_projections,
    enumerate_chains,
)
from dpderham.randgen import FormGenerator
from dpderham.sset import simplex
from fractions import Fraction


def test_definite_int_power_rule():
    # int_0^theta x_1^[2] dx_1 = theta^[3]
    f = DividedPowerPoly.var(1, 1, 2)
    result = definite_int(f, 1, BoundSymbol.zero(), BoundSymbol.theta())
    assert result == DividedPowerPoly.theta(1, 3)


def test_definite_int_variable_bound():
    # int_0^{x_2} x_1 dx_1 = x_2^[2]
    f = DividedPowerPoly.var(2, 1, 1)
    result = definite_int(f, 1, BoundSymbol.zero(), BoundSymbol.var(2))
    assert result == DividedPowerPoly.var(2, 2, 2)


def test_iterated_int_simplex_volume():
    # vol(Delta^2) as an iterated integral: theta^[2], realizing to 1/2
    f = DividedPowerPoly.one(2)
    spec = IntegralSpec(
        (
            (1, BoundSymbol.zero(), BoundSymbol.var(2)),
            (2, BoundSymbol.zero(), BoundSymbol.theta()),
        )
    )
    result = iterated_int(f, spec)
    assert result == DividedPowerPoly.theta(2, 2)
    realized = field_realize(result)
    assert realized.terms.get((0, 0, 0)) == Fraction(1, 2)


def test_position_bound_endpoints():
    assert position_bound(0, 3).tag == "theta"
    assert position_bound(4, 3).tag == "zero"
    assert position_bound(2, 3).tag == "var"


def test_chain_int_volume_of_prism_fiber():
    # integrating dx over each chain of [1] x [1] gives a 0-form on Delta^1;
    # the two chains' volumes sum to theta (the affine volume of the fiber)
    omega = SimplexForm.monomial(1, (1,), DividedPowerPoly.one(1))
    total = SimplexForm.zero(1)
    for chain in enumerate_chains(1, 1):
        _, fiber = chain_projections(chain)
        total = total + chain_int(form_pullback(fiber, omega), chain)
    assert total == SimplexForm.from_poly(DividedPowerPoly.theta(1, 1))


def test_prism_form_memoizes_values():
    gen = FormGenerator(21)
    prism = gen.product_form(simplex(1), 1).restrict((0, 1))
    v1 = prism.value(OrdinalMap.identity(1), OrdinalMap.identity(1))
    v2 = prism.value(OrdinalMap.identity(1), OrdinalMap.identity(1))
    assert v1 is v2


def test_materialize_preserves_prism_form():
    gen = FormGenerator(22)
    for _ in range(5):
        prism = gen.product_form(simplex(1), 2).restrict((0, 1))
        assert materialize(prism).equals(prism)


def test_ez_strip_recovers_degenerate_prism():
    gen = FormGenerator(23)
    for _ in range(5):
        prism = gen.product_form(simplex(1), 1).restrict((0, 1))
        fat = prism.base_restrict(OrdinalMap.sigma(0, 1))
        sigma, core = ez_strip(materialize(fat))
        assert core.base_restrict(sigma).equals(fat)


def test_fiber_integral_of_pulled_back_base_form_vanishes():
    # forms pulled back from the base integrate to zero along a positive-
    # dimensional fiber
    gen = FormGenerator(24)
    base_form = gen.simplex_form(1, 1)

    def fn(alpha, tau):
        return form_pullback(alpha, base_form)

    prism = PrismForm(1, 1, fn)
    assert fiber_int_simplex(prism).is_zero()
