"""Exact divided-power de Rham calculus on simplicial sets.

Integer-coefficient differential forms on finite simplicial sets with
divided power coefficients, fiberwise and iterated integration, the Stokes
identity, the two-sided bar complex with its shuffle product, and the
iterated-integral map into forms on the path space.
"""

from .dpalg import (
    CoeffTarget,
    DividedPowerPoly,
    RationalPoly,
    dp_coeff_change,
    dp_embed_rational,
    dp_partial,
    dp_pullback,
    field_realize,
)
from .derham import SimplexForm, exterior_d, form_pullback, wedge
from .integrate import (
    BoundSymbol,
    IntegralSpec,
    PrismForm,
    chain_int,
    definite_int,
    ez_strip,
    fiber_int_simplex,
    iterated_int,
)
from .ordinals import MaximalChain, OrdinalMap, compose, enumerate_chains
from .sset import (
    FiniteSimplicialSet,
    SimplicialMap,
    boundary,
    circle,
    horn,
    prism,
    product,
    simplex,
)
from .sforms import (
    PathSimplex,
    ProductForm,
    SimplicialForm,
    boundary_int,
    constant_form,
    d_form,
    fiber_int,
    iterated_integral_at,
    pullback_form,
    stokes_residual,
    wedge_form,
)
from .bar import BarElement, BarWord, II, bar_d, bar_shuffle, cc_d, reduce_cc

__version__ = "0.1.0"
