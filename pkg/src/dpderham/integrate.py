"""Symbolic integration of divided power forms.

The ladder here goes: definite integration of a single divided power
variable, iterated integration, the integral over one chain simplex of a
prism, and finally fiberwise integration of a whole prism family (with the
Eilenberg-Zilber strip applied first so degenerate families integrate
correctly).
"""

from __future__ import annotations

from dataclasses import dataclass

from .dpalg import DividedPowerPoly, dp_pullback
from .derham import SimplexForm, chain_decompose, exterior_d, form_pullback
from .ordinals import (
    MaximalChain,
    OrdinalMap,
    chain_sections,
    compose,
    enumerate_chains,
)


@dataclass(frozen=True)
class BoundSymbol:
    """An integration bound: theta, zero, or one of the simplex variables."""

    tag: str  # "theta" | "zero" | "var"
    index: int = 0

    def __post_init__(self):
        if self.tag not in ("theta", "zero", "var"):
            raise ValueError(f"unknown bound tag {self.tag!r}")
        if self.tag == "var" and self.index < 1:
            raise ValueError("variable bounds need index >= 1")

    @staticmethod
    def theta() -> "BoundSymbol":
        return BoundSymbol("theta")

    @staticmethod
    def zero() -> "BoundSymbol":
        return BoundSymbol("zero")

    @staticmethod
    def var(j: int) -> "BoundSymbol":
        return BoundSymbol("var", j)

    def power(self, num_vars: int, exponent: int) -> DividedPowerPoly:
        """The divided power bound**[exponent] as a polynomial."""
        if self.tag == "zero":
            # 0^[0] = 1, 0^[N] = 0
            return (
                DividedPowerPoly.one(num_vars)
                if exponent == 0
                else DividedPowerPoly.zero(num_vars)
            )
        i = 0 if self.tag == "theta" else self.index
        return DividedPowerPoly.var(num_vars, i, exponent)

    def __repr__(self):
        return {"theta": "theta", "zero": "0"}.get(self.tag, f"x{self.index}")


def position_bound(position: int, top: int) -> BoundSymbol:
    """The bound attached to a simplex position, with x_0 = theta and x_{top+1} = 0."""
    if position == 0:
        return BoundSymbol.theta()
    if position == top + 1:
        return BoundSymbol.zero()
    if not 1 <= position <= top:
        raise ValueError(f"position {position} out of range for top {top}")
    return BoundSymbol.var(position)


@dataclass(frozen=True)
class IntegralSpec:
    """A sequence of (variable, lower bound, upper bound) integration steps."""

    steps: tuple[tuple[int, BoundSymbol, BoundSymbol], ...]


def definite_int(
    f: DividedPowerPoly, i: int, lo: BoundSymbol, hi: BoundSymbol
) -> DividedPowerPoly:
    """Integrate out x_i between two symbolic bounds.

    Monomial-wise, x_i^[N] becomes hi^[N+1] - lo^[N+1], multiplied back into
    the rest of the monomial with the divided power product so any divided
    power collisions with a variable bound are handled exactly.
    """
    if i < 1 or i > f.num_vars:
        raise ValueError(f"cannot integrate over variable {i}")
    n = f.num_vars
    out = DividedPowerPoly.zero(n)
    for exps, coef in f.terms.items():
        power = exps[i] + 1
        rest = list(exps)
        rest[i] = 0
        sub = hi.power(n, power) - lo.power(n, power)
        if sub.is_zero():
            continue
        out = out + DividedPowerPoly(n, {tuple(rest): coef}) * sub
    return out


def iterated_int(f: DividedPowerPoly, spec: IntegralSpec) -> DividedPowerPoly:
    """Left-to-right fold of definite integrations."""
    out = f
    for i, lo, hi in spec.steps:
        out = definite_int(out, i, lo, hi)
    return out


def chain_int(omega: SimplexForm, chain: MaximalChain) -> SimplexForm:
    """Integrate a form on the (n+r)-simplex over the fiber of one chain.

    The form is decomposed along the chain; the full-fiber-volume coefficient
    of each fiber factor is integrated over the fiber variables (bounds given
    by the chain's section data) and the result, re-indexed to the base
    simplex, multiplies the base factor.
    """
    n, r = chain.n, chain.r
    if omega.dim != n + r:
        raise ValueError("form dimension does not match the chain grid")
    b, f, u = chain_sections(chain)
    top = n + r
    steps = tuple(
        (f(k), position_bound(f(k) + 1, top), position_bound(u[k - 1], top))
        for k in range(1, r + 1)
    )
    spec = IntegralSpec(steps)
    split = chain_decompose(omega, chain)
    out = SimplexForm.zero(n)
    for (_, base), coeff in zip(split.pairs, split.top_fiber_coeffs):
        if coeff.is_zero():
            continue
        integrated = iterated_int(coeff, spec)
        pulled = dp_pullback(b, integrated)
        if pulled.is_zero():
            continue
        out = out + base.scale_poly(pulled)
    return out


class PrismForm:
    """A differential form on (standard n-simplex) x (standard r-simplex).

    Stored as its compatible family of values: for every pair of ordinal
    maps (alpha: [m] -> [n], tau: [m] -> [r]) the value is a SimplexForm on
    the m-simplex, natural in [m].  Values are produced by a callable and
    memoized; naturality is the supplier's responsibility (generators in
    this package produce natural families by construction).
    """

    def __init__(self, n: int, r: int, fn):
        self.n = n
        self.r = r
        self._fn = fn
        self._memo: dict[tuple, SimplexForm] = {}

    def value(self, alpha: OrdinalMap, tau: OrdinalMap) -> SimplexForm:
        if alpha.target != self.n or tau.target != self.r:
            raise ValueError("ordinal pair does not address this prism")
        if alpha.source != tau.source:
            raise ValueError("ordinal pair has mismatched sources")
        key = (alpha.images, tau.images)
        got = self._memo.get(key)
        if got is None:
            got = self._fn(alpha, tau)
            if got.dim != alpha.source:
                raise ValueError("prism value has the wrong dimension")
            self._memo[key] = got
        return got

    def top_value(self, chain: MaximalChain) -> SimplexForm:
        from .ordinals import chain_projections

        base, fiber = chain_projections(chain)
        return self.value(base, fiber)

    # -- restrictions ------------------------------------------------------

    def base_restrict(self, alpha: OrdinalMap) -> "PrismForm":
        """Pull back along (alpha x id) on the base factor."""
        if alpha.target != self.n:
            raise ValueError("base restriction map has the wrong target")
        return PrismForm(
            alpha.source, self.r, lambda a, t: self.value(compose(alpha, a), t)
        )

    def fiber_restrict(self, tau_map: OrdinalMap) -> "PrismForm":
        """Pull back along (id x tau_map) on the fiber factor."""
        if tau_map.target != self.r:
            raise ValueError("fiber restriction map has the wrong target")
        return PrismForm(
            self.n, tau_map.source, lambda a, t: self.value(a, compose(tau_map, t))
        )

    def d(self) -> "PrismForm":
        return PrismForm(self.n, self.r, lambda a, t: exterior_d(self.value(a, t)))

    def __add__(self, other: "PrismForm") -> "PrismForm":
        if (self.n, self.r) != (other.n, other.r):
            raise ValueError("prism shape mismatch")
        return PrismForm(self.n, self.r, lambda a, t: self.value(a, t) + other.value(a, t))

    def equals(self, other: "PrismForm") -> bool:
        """Equality of prism forms, tested on the top chain simplices.

        Every simplex of the prism factors through a maximal chain, so equal
        top values force equal families.
        """
        if (self.n, self.r) != (other.n, other.r):
            return False
        return all(
            self.top_value(chain) == other.top_value(chain)
            for chain in enumerate_chains(self.n, self.r)
        )


def _factor_through_chain(n: int, r: int, a_imgs, t_imgs):
    """A maximal chain through the points (a_k, t_k) and their positions on it.

    Both coordinate lists are monotone, so the points form a chain in the
    product order and lie on some monotone lattice path.
    """
    pts = sorted(set(zip(a_imgs, t_imgs)))
    path = [(0, 0)]
    for x, y in pts + [(n, r)]:
        cx, cy = path[-1]
        while cx < x:
            cx += 1
            path.append((cx, cy))
        while cy < y:
            cy += 1
            path.append((cx, cy))
    chain = MaximalChain(n, r, tuple(path))
    index = {p: j for j, p in enumerate(path)}
    beta = tuple(index[p] for p in zip(a_imgs, t_imgs))
    return chain, beta


def materialize(prism: PrismForm) -> PrismForm:
    """Evaluate the family once per maximal chain; derive all other values.

    Every simplex of the prism factors through a top chain simplex, so a
    natural family is determined by its top values and pullbacks -- much
    cheaper than re-walking the supplier for each addressed simplex.
    """
    tops = {c: prism.top_value(c) for c in enumerate_chains(prism.n, prism.r)}
    n, r = prism.n, prism.r

    def fn(alpha: OrdinalMap, tau: OrdinalMap) -> SimplexForm:
        chain, beta = _factor_through_chain(n, r, alpha.images, tau.images)
        return form_pullback(OrdinalMap(n + r, beta), tops[chain])

    return PrismForm(n, r, fn)


def ez_strip(prism: PrismForm) -> tuple[OrdinalMap, PrismForm]:
    """Write the prism family as a base degeneracy of a nondegenerate one.

    Repeatedly strips the least base index i with family == s_i(d_i(family)),
    accumulating the surjection; the result (sigma, core) satisfies
    core.base_restrict-free nondegeneracy and base_restrict(sigma) == input.
    """
    sigma = OrdinalMap.identity(prism.n)
    current = prism
    stripped = True
    while stripped and current.n > 0:
        stripped = False
        for i in range(current.n):
            face = current.base_restrict(OrdinalMap.delta(i, current.n))
            if current.equals(face.base_restrict(OrdinalMap.sigma(i, current.n - 1))):
                sigma = compose(OrdinalMap.sigma(i, current.n - 1), sigma)
                current = face
                stripped = True
                break
    return sigma, current


def fiber_int_simplex(prism: PrismForm) -> SimplexForm:
    """Fiberwise integration of a prism family down to its base simplex.

    The family is first reduced to its nondegenerate core by the
    Eilenberg-Zilber strip, the core is integrated chain by chain, and the
    stripped degeneracy is applied back.
    """
    sigma, core = ez_strip(materialize(prism))
    total = SimplexForm.zero(core.n)
    for chain in enumerate_chains(core.n, prism.r):
        total = total + chain_int(core.top_value(chain), chain)
    return form_pullback(sigma, total) if not sigma.is_identity() else total
