from fractions import Fraction

import pytest

from dpderham.dpalg import DividedPowerPoly
from dpderham.derham import SimplexForm
from dpderham.integrate import BoundSymbol
from dpderham.jsonio import (
    decode_bar_element,
    decode_bound,
    decode_chain,
    decode_form,
    decode_ordinal,
    decode_path_simplex,
    decode_poly,
    decode_scalar,
    decode_simplicial_form,
    decode_spec,
    encode_bar_element,
    encode_bound,
    encode_chain,
    encode_form,
    encode_ordinal,
    encode_path_simplex,
    encode_poly,
    encode_scalar,
    encode_simplicial_form,
    space_from_preset,
)
from dpderham.ordinals import MaximalChain, OrdinalMap
from dpderham.randgen import FormGenerator
from dpderham.bar import BarElement
from dpderham.verify import _random_word


def test_scalar_round_trip():
    for c in (3, -1, Fraction(7, 2), 0):
        assert decode_scalar(encode_scalar(c)) == c


def test_ordinal_round_trip():
    a = OrdinalMap(3, (0, 2, 2))
    assert decode_ordinal(encode_ordinal(a)) == a


def test_chain_round_trip():
    c = MaximalChain.from_steps(2, 1, "SFS")
    assert decode_chain(encode_chain(c)) == c


def test_poly_round_trip():
    f = DividedPowerPoly(2, {(1, 0, 2): 3, (0, 1, 1): -2})
    assert decode_poly(encode_poly(f)) == f


def test_form_round_trip():
    gen = FormGenerator(51)
    omega = gen.mixed_simplex_form(2)
    assert decode_form(encode_form(omega)) == omega


def test_bound_round_trip():
    for b in (BoundSymbol.theta(), BoundSymbol.zero(), BoundSymbol.var(2)):
        assert decode_bound(encode_bound(b)) == b


def test_spec_decode():
    spec = decode_spec([{"i": 1, "lo": "0", "hi": "x2"}, {"i": 2, "lo": "0", "hi": "theta"}])
    assert spec.steps[0][0] == 1
    assert spec.steps[1][2].tag == "theta"


def test_space_presets():
    for name in ("simplex:2", "boundary:2", "horn:2:1", "circle", "prism:1"):
        X = space_from_preset(name)
        X.validate()
    with pytest.raises((KeyError, ValueError)):
        space_from_preset("klein-bottle")


def test_simplicial_form_round_trip():
    gen = FormGenerator(52)
    for preset in ("simplex:2", "circle"):
        X = space_from_preset(preset)
        F = gen.mixed_simplicial_form(X, 1)
        data = encode_simplicial_form(F)
        again = decode_simplicial_form(data)
        assert again == F


def test_path_simplex_round_trip():
    gen = FormGenerator(53)
    X = space_from_preset("circle")
    path = gen.path_simplex(X, 1)
    data = encode_path_simplex(path, "circle")
    again = decode_path_simplex(data)
    assert again.n == path.n
    assert again.phi.mapping == path.phi.mapping


def test_bar_element_round_trip():
    gen = FormGenerator(54)
    X = space_from_preset("simplex:1")
    e = BarElement.from_word(_random_word(gen, X, 2, 1))
    data = encode_bar_element(e)
    again = decode_bar_element(data)
    assert (again - e).is_zero()
