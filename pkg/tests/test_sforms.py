from dpderham.dpalg import DividedPowerPoly, field_realize
from dpderham.derham import SimplexForm
from dpderham.randgen import FormGenerator
from dpderham.sforms import (
    PathSimplex,
    ProductForm,
    constant_form,
    d_form,
    endpoint,
    fiber_int,
    form_at,
    iterated_integral_at,
    pullback_form,
    stokes_residual,
    wedge_form,
)
from dpderham.sset import boundary, char_map, circle, nerve_map, simplex


def test_simplicial_form_face_compatibility_enforced():
    import pytest

    X = simplex(1)
    good = constant_form(X, DividedPowerPoly.theta(0, 1))
    assert not good.is_zero()
    bad_values = dict(good.values)
    bad_values[(0,)] = SimplexForm.const(0, 5)
    from dpderham.sforms import SimplicialForm

    with pytest.raises(ValueError):
        SimplicialForm(X, bad_values)


def test_d_and_wedge_are_computed_cellwise():
    gen = FormGenerator(31)
    X = boundary(2)
    F = gen.mixed_simplicial_form(X, 1)
    G = gen.mixed_simplicial_form(X, 1)
    dF = d_form(F)
    for t in X.dim_of:
        from dpderham.derham import exterior_d, wedge

        assert form_at(dF, nd(X, t)) == exterior_d(form_at(F, nd(X, t)))
        assert form_at(wedge_form(F, G), nd(X, t)) == wedge(
            form_at(F, nd(X, t)), form_at(G, nd(X, t))
        )


def nd(X, t):
    from dpderham.sset import Deg
    from dpderham.ordinals import OrdinalMap

    return Deg(t, OrdinalMap.identity(X.dim_of[t]))


def test_pullback_form_along_char_map():
    gen = FormGenerator(32)
    X = simplex(2)
    F = gen.simplicial_form(X, 1)
    f = char_map(X, (0, 1))
    G = pullback_form(f, F)
    assert G.space is f.source


def test_stokes_residual_vanishes_smoke():
    gen = FormGenerator(33)
    for space in (simplex(1), boundary(2), circle()):
        for r in (1, 2):
            for _ in range(3):
                F = gen.product_form(space, r)
                assert stokes_residual(F).is_zero()


def test_fiber_int_of_base_pullback_vanishes():
    gen = FormGenerator(34)
    X = simplex(1)
    F = gen.simplicial_form(X, 1)
    lifted = ProductForm.pulled_from_base(F, 1)
    assert fiber_int(lifted).is_zero()


def test_identity_path_integral_of_dx_is_theta():
    # the length of the identity path on Delta^1 is theta, realizing to 1
    X = simplex(1)
    vm = {(0, 0): 0, (0, 1): 1}
    path = PathSimplex(0, nerve_map(0, X, (0, 1), vm))
    dx = one_form_dx(X)
    result = iterated_integral_at([dx], path)
    assert result == SimplexForm.from_poly(DividedPowerPoly.theta(0, 1))
    realized = field_realize(result.terms[()])
    assert realized.terms.get((0,)) == 1


def test_fan_path_integral_of_dx_is_x1():
    # a path family sweeping from the basepoint out to x_1 integrates dx to x_1
    X = simplex(1)
    vm = {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 1}
    path = PathSimplex(1, nerve_map(1, X, (0, 1), vm))
    dx = one_form_dx(X)
    result = iterated_integral_at([dx], path)
    assert result == SimplexForm.from_poly(DividedPowerPoly.var(1, 1, 1))


def one_form_dx(X):
    from dpderham.sforms import SimplicialForm
    from dpderham.derham import form_pullback
    from dpderham.ordinals import OrdinalMap

    top = SimplexForm.dx(1, 1)
    values = {}
    for t, n in X.dim_of.items():
        sub = OrdinalMap(1, t)
        values[t] = form_pullback(sub, top)
    return SimplicialForm(X, values)


def test_endpoints_of_identity_path():
    X = simplex(1)
    vm = {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 1}
    path = PathSimplex(1, nerve_map(1, X, (0, 1), vm))
    e0 = endpoint(path, 0)
    e1 = endpoint(path, 1)
    assert not e0.is_nondegenerate()  # constant at vertex 0
    assert e1.target == (0, 1)
