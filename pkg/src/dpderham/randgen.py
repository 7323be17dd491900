"""Seeded random generators for polynomials, forms and path simplices.

Everything is driven by one ``random.Random`` instance so reports are
reproducible from a seed.  Random simplicial forms are sound by
construction: on a standard simplex they come from a single top-level form,
on subcomplexes from restricting an ambient form and adding relative bumps
(forms on a top cell vanishing on all of its faces), and on the circle from
a constant plus a bump on the edge.
"""

from __future__ import annotations

import random

from .dpalg import DividedPowerPoly
from .derham import SimplexForm, form_pullback
from .ordinals import OrdinalMap
from .sforms import PathSimplex, ProductForm, SimplicialForm, form_at
from .sset import FiniteSimplicialSet, nerve_map, simplex


class FormGenerator:
    """Reproducible source of random algebraic and simplicial data."""

    def __init__(self, seed: int, max_exp: int = 2, coeff_bound: int = 3):
        self.rng = random.Random(seed)
        self.max_exp = max_exp
        self.coeff_bound = coeff_bound

    # -- polynomials -------------------------------------------------------

    def coeff(self) -> int:
        c = 0
        while not c:
            c = self.rng.randint(-self.coeff_bound, self.coeff_bound)
        return c

    def poly(self, num_vars: int, max_terms: int = 3) -> DividedPowerPoly:
        terms: dict = {}
        for _ in range(self.rng.randint(1, max_terms)):
            exps = tuple(self.rng.randint(0, self.max_exp) for _ in range(num_vars + 1))
            terms[exps] = terms.get(exps, 0) + self.coeff()
        return DividedPowerPoly(num_vars, terms)

    def theta_poly(self, max_terms: int = 2) -> DividedPowerPoly:
        return self.poly(0, max_terms)

    # -- forms on one simplex ----------------------------------------------

    def simplex_form(self, dim: int, degree: int, max_terms: int = 2) -> SimplexForm:
        """A random homogeneous form of the given degree on the n-simplex."""
        if degree > dim:
            return SimplexForm.zero(dim)
        out = SimplexForm.zero(dim)
        for _ in range(self.rng.randint(1, max_terms)):
            S = tuple(sorted(self.rng.sample(range(1, dim + 1), degree)))
            out = out + SimplexForm.monomial(dim, S, self.poly(dim))
        return out

    def mixed_simplex_form(self, dim: int, max_degree: int | None = None) -> SimplexForm:
        top = dim if max_degree is None else min(dim, max_degree)
        out = SimplexForm.zero(dim)
        for q in range(top + 1):
            if self.rng.random() < 0.7:
                out = out + self.simplex_form(dim, q)
        return out

    def relative_bump(self, m: int, degree: int) -> SimplexForm:
        """A form on the m-simplex that restricts to zero on every face.

        Supported shapes: top-degree forms (every face kills a dx), and
        0-forms on the 1-simplex vanishing at both endpoints.
        """
        if degree == m and m >= 1:
            S = tuple(range(1, m + 1))
            return SimplexForm.monomial(m, S, self.poly(m))
        if degree == 0 and m == 1:
            x = DividedPowerPoly.var(1, 1)
            theta = DividedPowerPoly.theta(1)
            return SimplexForm.from_poly((x * (theta - x)) * self.poly(1, max_terms=2))
        return SimplexForm.zero(m)

    # -- forms on a space --------------------------------------------------

    def simplicial_form(self, space: FiniteSimplicialSet, degree: int) -> SimplicialForm:
        """A random homogeneous form on one of the preset spaces."""
        if space.kind[0] == "simplex":
            n = space.kind[1]
            top = self.simplex_form(n, degree)
            vals = {
                sub: form_pullback(OrdinalMap(n, sub), top) for sub in space.dim_of
            }
            return SimplicialForm(space, vals, check=False)
        if space.kind[0] == "sub" and space.kind[1][0] == "simplex":
            # a subcomplex of a standard simplex: restrict an ambient form,
            # then perturb the top cells by relative bumps
            amb = space.kind[1][1]
            top = self.simplex_form(amb, degree)
            vals = {}
            for sub in space.dim_of:
                m = space.dim_of[sub]
                v = form_pullback(OrdinalMap(amb, sub), top)
                if m == max(space.dims) and self.rng.random() < 0.8:
                    v = v + self.relative_bump(m, degree)
                vals[sub] = v
            return SimplicialForm(space, vals)
        if space.name == "circle":
            if degree == 0:
                c = self.theta_poly()
                lifted = DividedPowerPoly(
                    1, {(e[0], 0): k for e, k in c.terms.items()}
                )
                edge = SimplexForm.from_poly(lifted) + self.relative_bump(1, 0)
                return SimplicialForm(
                    space, {"v": SimplexForm.from_poly(c), "e": edge}
                )
            if degree == 1:
                return SimplicialForm(space, {"e": self.relative_bump(1, 1)})
            return SimplicialForm(space, {})
        raise ValueError(f"no random form recipe for space {space.name!r}")

    def mixed_simplicial_form(self, space: FiniteSimplicialSet, max_degree: int) -> SimplicialForm:
        out = None
        top = min(max_degree, max(space.dims))
        for q in range(top + 1):
            if self.rng.random() < 0.7:
                piece = self.simplicial_form(space, q)
                out = piece if out is None else out + piece
        if out is None:
            out = self.simplicial_form(space, 0)
        return out

    def product_form(self, space: FiniteSimplicialSet, r: int, n_terms: int = 2,
                     max_degree: int | None = None) -> ProductForm:
        """A random form on space x simplex(r): a sum of products of pullbacks."""
        terms = []
        for _ in range(n_terms):
            F = self.mixed_simplicial_form(space, max(space.dims) if max_degree is None else max_degree)
            eta = self.mixed_simplex_form(r)
            terms.append((F, eta))
        return ProductForm.from_products(space, r, terms)

    # -- path simplices ----------------------------------------------------

    def monotone_vertex_map(self, n: int, k: int) -> dict:
        """A random monotone map [n] x [1] -> [k] (product order)."""
        out = {}
        lo = 0
        for i in range(n + 1):
            lo = self.rng.randint(lo, k)
            out[(i, 0)] = lo
        hi = out[(0, 0)]
        for i in range(n + 1):
            hi = self.rng.randint(max(hi, out[(i, 0)]), k)
            out[(i, 1)] = hi
        return out

    def path_simplex(self, X: FiniteSimplicialSet, n: int) -> PathSimplex:
        """A random n-simplex of the path space of X, through one cell of X."""
        cells = [t for t in X.dim_of]
        weights = [1 + X.dim_of[t] for t in cells]
        t = self.rng.choices(cells, weights=weights)[0]
        k = X.dim_of[t]
        vm = self.monotone_vertex_map(n, k)
        return PathSimplex(n, nerve_map(n, X, t, vm))
