"""Differential forms on finite simplicial sets and the iterated integral.

A ``SimplicialForm`` assigns a form on the standard m-simplex to every
nondegenerate m-simplex of a space, compatibly with faces.  Path simplices
(simplices of the unmaterialized path space) arrive as explicit simplicial
maps out of prisms; the iterated integral of a tuple of forms is evaluated
lazily at such path simplices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dpalg import DividedPowerPoly
from .derham import SimplexForm, exterior_d, form_pullback, wedge
from .integrate import PrismForm, fiber_int_simplex
from .ordinals import OrdinalMap, compose
from .sset import (
    Deg,
    FiniteSimplicialSet,
    SimplicialMap,
    prism,
    product_simplex,
    simplex,
)


class SimplicialForm:
    """A compatible family of simplex forms over the nondegenerate simplices."""

    def __init__(self, space: FiniteSimplicialSet, values: dict, check: bool = True):
        self.space = space
        vals = {}
        for t in space.dim_of:
            v = values.get(t)
            if v is None:
                v = SimplexForm.zero(space.dim_of[t])
            if v.dim != space.dim_of[t]:
                raise ValueError(f"value at {t!r} has the wrong dimension")
            vals[t] = v
        self.values = vals
        self._key = None
        if check:
            self.validate()

    def validate(self):
        """Face compatibility: restricting a value matches the stored face value."""
        for m, ids in self.space.dims.items():
            if m < 1:
                continue
            for t in ids:
                for i in range(m + 1):
                    ptr = self.space.faces[(t, i)]
                    expect = form_pullback(ptr.word, self.values[ptr.target])
                    got = form_pullback(OrdinalMap.delta(i, m), self.values[t])
                    if expect != got:
                        raise ValueError(
                            f"face-incompatible value at {t!r}, face {i}"
                        )

    # -- algebra ----------------------------------------------------------

    def _check_space(self, other: "SimplicialForm"):
        if self.space is not other.space and self.space.name != other.space.name:
            raise ValueError("forms live on different spaces")

    def __add__(self, other: "SimplicialForm") -> "SimplicialForm":
        self._check_space(other)
        return SimplicialForm(
            self.space,
            {t: v + other.values[t] for t, v in self.values.items()},
            check=False,
        )

    def __neg__(self) -> "SimplicialForm":
        return SimplicialForm(self.space, {t: -v for t, v in self.values.items()}, check=False)

    def __sub__(self, other: "SimplicialForm") -> "SimplicialForm":
        return self + (-other)

    def scale(self, c) -> "SimplicialForm":
        return SimplicialForm(self.space, {t: v.scale(c) for t, v in self.values.items()}, check=False)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def degrees(self) -> set:
        out = set()
        for v in self.values.values():
            out |= v.degrees()
        return out

    def degree(self) -> int | None:
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    def key(self):
        if self._key is None:
            self._key = tuple(
                sorted((str(t), v.key()) for t, v in self.values.items() if not v.is_zero())
            )
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialForm) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<form on {self.space.name}: " + ", ".join(
            f"{t!r}:{v!r}" for t, v in sorted(self.values.items(), key=lambda kv: str(kv[0]))
            if not v.is_zero()
        ) + ">"


def form_at(F: SimplicialForm, s: Deg) -> SimplexForm:
    """The value of a form at a possibly-degenerate simplex."""
    return form_pullback(s.word, F.values[s.target])


def constant_form(space: FiniteSimplicialSet, coeff: DividedPowerPoly) -> SimplicialForm:
    """The form pulled back from the point: the same theta-polynomial everywhere."""
    if not coeff.theta_only() or coeff.num_vars != 0:
        raise ValueError("constant coefficient must be a theta polynomial in arity 0")
    vals = {}
    for t, m in space.dim_of.items():
        lifted = DividedPowerPoly(
            m, {(e[0],) + (0,) * m: c for e, c in coeff.terms.items()}
        )
        vals[t] = SimplexForm.from_poly(lifted)
    return SimplicialForm(space, vals, check=False)


def d_form(F: SimplicialForm) -> SimplicialForm:
    return SimplicialForm(F.space, {t: exterior_d(v) for t, v in F.values.items()}, check=False)


def wedge_form(F: SimplicialForm, G: SimplicialForm) -> SimplicialForm:
    F._check_space(G)
    return SimplicialForm(
        F.space, {t: wedge(v, G.values[t]) for t, v in F.values.items()}, check=False
    )


def pullback_form(f: SimplicialMap, G: SimplicialForm) -> SimplicialForm:
    """The form on f's source obtained by evaluating G at image simplices."""
    if G.space is not f.target and G.space.name != f.target.name:
        raise ValueError("form does not live on the map's target")
    vals = {t: form_at(G, f.apply_id(t)) for t in f.source.dim_of}
    return SimplicialForm(f.source, vals, check=False)


# -- forms on a product with a simplex ------------------------------------


class ProductForm:
    """A differential form on X x (standard r-simplex).

    Values are indexed by a simplex of X (as a Deg pointer, possibly
    precomposed) together with an ordinal map into [r]; families built here
    are natural by construction.  ``terms`` based product forms evaluate as
    sums of wedge products of a form on X with a form on the fiber simplex.
    """

    def __init__(self, space: FiniteSimplicialSet, r: int, fn):
        self.space = space
        self.r = r
        self._fn = fn

    @staticmethod
    def from_products(space, r: int, terms) -> "ProductForm":
        """Sum of p_X*(F) ^ p_fiber*(eta) over (F, eta) pairs."""
        fiber_dim = r

        def fn(s: Deg, tau: OrdinalMap):
            m = s.dim
            total = SimplexForm.zero(m)
            for F, eta in terms:
                left = form_at(F, s)
                right = form_pullback(tau, eta)
                total = total + wedge(left, right)
            return total

        for F, eta in terms:
            if eta.dim != fiber_dim:
                raise ValueError("fiber factor has the wrong dimension")
        return ProductForm(space, r, fn)

    @staticmethod
    def pulled_from_base(F: SimplicialForm, r: int) -> "ProductForm":
        return ProductForm(F.space, r, lambda s, tau: form_at(F, s))

    def value(self, s: Deg, tau: OrdinalMap) -> SimplexForm:
        if tau.target != self.r or tau.source != s.dim:
            raise ValueError("fiber coordinate map does not match the simplex")
        return self._fn(s, tau)

    def restrict(self, t) -> PrismForm:
        """The prism family over one nondegenerate simplex of the base."""
        n = self.space.dim_of[t]

        def fn(alpha: OrdinalMap, tau: OrdinalMap):
            return self.value(self.space.act(t, alpha), tau)

        return PrismForm(n, self.r, fn)

    def fiber_face(self, i: int) -> "ProductForm":
        """Restriction along the i-th face of the fiber simplex."""
        delta = OrdinalMap.delta(i, self.r)
        return ProductForm(
            self.space, self.r - 1, lambda s, tau: self.value(s, compose(delta, tau))
        )

    def d(self) -> "ProductForm":
        return ProductForm(self.space, self.r, lambda s, tau: exterior_d(self.value(s, tau)))

    def __add__(self, other: "ProductForm") -> "ProductForm":
        if self.r != other.r:
            raise ValueError("fiber dimensions differ")
        return ProductForm(
            self.space, self.r, lambda s, tau: self.value(s, tau) + other.value(s, tau)
        )


def fiber_int(F: ProductForm) -> SimplicialForm:
    """Fiberwise integration along the projection X x simplex(r) -> X."""
    vals = {t: fiber_int_simplex(F.restrict(t)) for t in F.space.dim_of}
    return SimplicialForm(F.space, vals)


def boundary_int(F: ProductForm) -> SimplicialForm:
    """Alternating sum of fiberwise integrals over the fiber faces."""
    if F.r < 1:
        raise ValueError("boundary integration needs fiber dimension >= 1")
    total = None
    for i in range(F.r + 1):
        piece = fiber_int(F.fiber_face(i))
        if i % 2:
            piece = -piece
        total = piece if total is None else total + piece
    return total


def stokes_residual(F: ProductForm) -> SimplicialForm:
    """fiber_int(dF) - boundary_int(F) - (-1)^r d(fiber_int(F)); zero by Stokes."""
    lhs = fiber_int(F.d()) - boundary_int(F)
    rhs = d_form(fiber_int(F)).scale((-1) ** F.r)
    return lhs - rhs


# -- path simplices and the iterated integral ------------------------------


@dataclass
class PathSimplex:
    """An n-simplex of the path space of X: a simplicial map from the prism."""

    n: int
    phi: SimplicialMap

    @property
    def space(self) -> FiniteSimplicialSet:
        return self.phi.target

    def prism_value(self, alpha: OrdinalMap, g: OrdinalMap) -> Deg:
        """The image in X of the prism simplex with coordinates (alpha, g)."""
        P = self.phi.source
        a = simplex(self.n).act(tuple(range(self.n + 1)), alpha)
        b = simplex(1).act((0, 1), g)
        return self.phi.apply(product_simplex(P, a, b))

    def precompose_base(self, alpha: OrdinalMap) -> "PathSimplex":
        """The path simplex phi . (alpha x id), an action of the simplex category."""
        m = alpha.source
        P_m = prism(m)
        big = simplex(self.n)
        mapping = {}
        for pid in P_m.dim_of:
            _, a, s, b, u = pid
            base_path = OrdinalMap(m, tuple(a[i] for i in s))
            a_big = big.act(tuple(range(self.n + 1)), compose(alpha, base_path))
            b_deg = simplex(1).act((0, 1), OrdinalMap(1, tuple(b[i] for i in u)))
            mapping[pid] = self.phi.apply(product_simplex(self.phi.source, a_big, b_deg))
        return PathSimplex(m, SimplicialMap(P_m, self.space, mapping))


def endpoint(path: PathSimplex, eps: int) -> Deg:
    """The n-simplex of X at the eps end of the path prism."""
    if eps not in (0, 1):
        raise ValueError("endpoint index must be 0 or 1")
    return path.prism_value(
        OrdinalMap.identity(path.n), OrdinalMap.constant(path.n, eps, 1)
    )


def product_form_eval(forms, path: PathSimplex) -> PrismForm:
    """The product form of omega_1, ..., omega_r evaluated over a path simplex.

    At the prism coordinate (alpha, tau) the value is the ascending wedge of
    each omega_i at the X-simplex traced out by the i-th coordinate of the
    staircase inclusion of the fiber simplex into the fiber cube.
    """
    r = len(forms)
    for F in forms:
        if F.space.name != path.space.name:
            raise ValueError("forms must live on the path's space")

    def fn(alpha: OrdinalMap, tau: OrdinalMap):
        m = alpha.source
        total = SimplexForm.one(m)
        for i, F in enumerate(forms, start=1):
            g = OrdinalMap(1, tuple(1 if tau(k) >= i else 0 for k in range(m + 1)))
            x = path.prism_value(alpha, g)
            total = wedge(total, form_at(F, x))
            if total.is_zero():
                break
        return total

    return PrismForm(path.n, r, fn)


def iterated_integral_at(forms, path: PathSimplex) -> SimplexForm:
    """The iterated integral of the given forms, evaluated at one path simplex."""
    if not forms:
        return SimplexForm.one(path.n)
    return fiber_int_simplex(product_form_eval(forms, path))
