from dpderham.dpalg import DividedPowerPoly
from dpderham.derham import (
    SimplexForm,
    exterior_d,
    form_pullback,
    sort_with_sign,
    wedge,
)
from dpderham.ordinals import OrdinalMap, compose
from dpderham.randgen import FormGenerator


def test_sort_with_sign():
    assert sort_with_sign((1, 2)) == ((1, 2), 1)
    assert sort_with_sign((2, 1)) == ((1, 2), -1)
    S, sign = sort_with_sign((1, 1))
    assert S is None and sign == 0


def test_wedge_graded_commutative():
    gen = FormGenerator(11)
    for dim in (2, 3):
        for p in range(dim + 1):
            for q in range(dim + 1 - p):
                a = gen.simplex_form(dim, p)
                b = gen.simplex_form(dim, q)
                sign = -1 if (p * q) % 2 else 1
                assert wedge(a, b) == wedge(b, a).scale(sign)


def test_wedge_associative():
    gen = FormGenerator(12)
    a = gen.mixed_simplex_form(3)
    b = gen.mixed_simplex_form(3)
    c = gen.mixed_simplex_form(3)
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


def test_d_squared_zero():
    gen = FormGenerator(13)
    for dim in (1, 2, 3):
        for _ in range(10):
            omega = gen.mixed_simplex_form(dim)
            assert exterior_d(exterior_d(omega)).is_zero()


def test_leibniz_rule():
    gen = FormGenerator(14)
    for _ in range(10):
        p = gen.rng.randrange(3)
        a = gen.simplex_form(2, p)
        b = gen.mixed_simplex_form(2)
        sign = -1 if p % 2 else 1
        lhs = exterior_d(wedge(a, b))
        rhs = wedge(exterior_d(a), b) + wedge(a, exterior_d(b)).scale(sign)
        assert lhs == rhs


def test_d_of_divided_power():
    # d(x_1^[N]) = x_1^[N-1] dx_1
    f = SimplexForm.from_poly(DividedPowerPoly.var(2, 1, 3))
    assert exterior_d(f) == SimplexForm.monomial(2, (1,), DividedPowerPoly.var(2, 1, 2))


def test_pullback_commutes_with_d_and_wedge():
    gen = FormGenerator(15)
    alpha = OrdinalMap(3, (0, 2, 2))
    for _ in range(10):
        a = gen.mixed_simplex_form(3)
        b = gen.mixed_simplex_form(3)
        assert form_pullback(alpha, exterior_d(a)) == exterior_d(form_pullback(alpha, a))
        assert form_pullback(alpha, wedge(a, b)) == wedge(
            form_pullback(alpha, a), form_pullback(alpha, b)
        )


def test_pullback_functorial_on_forms():
    gen = FormGenerator(16)
    alpha = OrdinalMap(3, (0, 1, 3))
    beta = OrdinalMap(2, (0, 0, 2))
    omega = gen.mixed_simplex_form(3)
    assert form_pullback(beta, form_pullback(alpha, omega)) == form_pullback(
        compose(alpha, beta), omega
    )


def test_top_form_killed_by_faces():
    top = SimplexForm.monomial(2, (1, 2), DividedPowerPoly.one(2))
    for i in range(3):
        assert form_pullback(OrdinalMap.delta(i, 2), top).component(2).is_zero()
