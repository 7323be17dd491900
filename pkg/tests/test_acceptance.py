"""End-to-end acceptance checks.

Every check uses exact arithmetic; a single nonzero residual anywhere is a
failure.  Random inputs are seeded so the suite is reproducible."""

import math
from fractions import Fraction

from dpderham.bar import BarElement, bar_d, bar_shuffle_elements, cc_d, reduce_cc
from dpderham.dpalg import DividedPowerPoly, field_realize
from dpderham.derham import SimplexForm, form_pullback
from dpderham.integrate import (
    BoundSymbol,
    IntegralSpec,
    ez_strip,
    iterated_int,
    materialize,
)
from dpderham.jsonio import space_from_preset
from dpderham.ordinals import OrdinalMap, enumerate_chains
from dpderham.randgen import FormGenerator
from dpderham.sforms import PathSimplex, iterated_integral_at
from dpderham.sset import nerve_map, product, simplex
from dpderham.verify import (
    _random_word,
    verify_bar_d2,
    verify_bar_shuffle_algebra,
    verify_embed_oracle,
    verify_ii_cochain,
    verify_ii_differential,
    verify_ii_shuffle,
    verify_naturality,
    verify_stokes,
)

STOKES_SPACES = ("simplex:0", "simplex:1", "simplex:2", "boundary:2", "circle")


def test_stokes_identity_on_preset_spaces():
    for preset in STOKES_SPACES:
        for r in (1, 2, 3):
            report = verify_stokes(preset, r, seed=1001, trials=50, max_exp=3)
            assert report["failures"] == [], (preset, r, report["failures"][:3])


def test_fiber_integration_natural_in_the_base():
    report = verify_naturality(seed=1002, trials=25)
    assert report["failures"] == []


def test_symbolic_integration_matches_rational_oracle():
    report = verify_embed_oracle(seed=1003, trials=500)
    assert report["trials"] >= 500
    assert report["failures"] == []


def test_differential_of_iterated_integral():
    total = 0
    for preset in ("simplex:1", "simplex:2", "circle"):
        report = verify_ii_differential(preset, seed=1004, trials=20, max_r=3, max_deg=2)
        assert report["failures"] == [], (preset, report["failures"][:3])
        total += report["trials"]
    assert total >= 60


def test_shuffle_identity_and_multiplicativity():
    for preset in ("simplex:1", "circle"):
        report = verify_ii_shuffle(preset, seed=1005, trials=20, max_pq=4)
        assert report["failures"] == [], (preset, report["failures"][:3])


def test_bar_differentials_square_to_zero_and_shuffle_algebra():
    d2 = verify_bar_d2("simplex:1", seed=1006, trials=100, max_r=3, max_deg=2)
    assert d2["failures"] == []
    d2c = verify_bar_d2("circle", seed=1007, trials=100, max_r=3, max_deg=2)
    assert d2c["failures"] == []
    alg = verify_bar_shuffle_algebra("simplex:1", seed=1008, trials=10)
    assert alg["failures"] == []


def test_iterated_integral_is_a_cochain_map():
    for preset in ("circle", "simplex:2"):
        report = verify_ii_cochain(preset, seed=1009, trials=20, max_r=3)
        assert report["failures"] == [], (preset, report["failures"][:3])


def test_prism_combinatorics_and_normalization():
    # chain counts
    for n in range(7):
        for r in range(7):
            assert len(enumerate_chains(n, r)) == math.comb(n + r, r)
    # nondegenerate top simplices of simplex(n) x simplex(r) biject with chains
    for n in range(4):
        for r in range(4):
            P = product(simplex(n), simplex(r), n + r)
            assert len(P.simplices(n + r)) == math.comb(n + r, r)
    # stripping degeneracies recovers the original family
    gen = FormGenerator(1010)
    for n, r in ((1, 1), (1, 2), (2, 1)):
        space = simplex(n)
        top = tuple(range(n + 1))
        for trial in range(10):
            prism = gen.product_form(space, r).restrict(top)
            degen = prism.base_restrict(OrdinalMap.sigma(gen.rng.randrange(n), n))
            sigma, core = ez_strip(materialize(degen))
            assert core.base_restrict(sigma).equals(degen)


def test_concrete_values():
    # the length of the sweeping path on the interval is theta, i.e. 1
    X = simplex(1)
    path = PathSimplex(0, nerve_map(0, X, (0, 1), {(0, 0): 0, (0, 1): 1}))
    from dpderham.sforms import SimplicialForm

    values = {
        t: form_pullback(OrdinalMap(1, t), SimplexForm.dx(1, 1)) for t in X.dim_of
    }
    dx = SimplicialForm(X, values)
    result = iterated_integral_at([dx], path)
    assert result == SimplexForm.from_poly(DividedPowerPoly.theta(0, 1))
    assert field_realize(result.terms[()]).terms.get((0,)) == 1

    # the area of the standard triangle is theta^[2], i.e. 1/2
    spec = IntegralSpec(
        (
            (1, BoundSymbol.zero(), BoundSymbol.var(2)),
            (2, BoundSymbol.zero(), BoundSymbol.theta()),
        )
    )
    vol = iterated_int(DividedPowerPoly.one(2), spec)
    assert vol == DividedPowerPoly.theta(2, 2)
    assert field_realize(vol).terms.get((0, 0, 0)) == Fraction(1, 2)
