"""Differential forms on a single standard simplex.

A ``SimplexForm`` on the n-simplex is a sum of terms ``poly * dx_S`` where S
is an ascending subset of {1, ..., n} and poly is a divided power
polynomial.  Terms are kept in the canonical order (S ascending, Koszul
signs normalized away at construction) so equality is a dictionary
comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dpalg import DividedPowerPoly, _pullback_slots, dp_partial, dp_pullback
from .ordinals import MaximalChain, OrdinalMap, chain_sections

IndexSet = tuple[int, ...]


def sort_with_sign(indices: tuple[int, ...]) -> tuple[IndexSet | None, int]:
    """Sort dx indices ascending, tracking the Koszul sign of the permutation.

    Returns (None, 0) when an index repeats (the wedge vanishes).
    """
    if len(set(indices)) != len(indices):
        return None, 0
    sign = 1
    lst = list(indices)
    # insertion sort; each adjacent swap of degree-1 generators flips the sign
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    return tuple(lst), sign


class SimplexForm:
    """A differential form on the standard n-simplex."""

    __slots__ = ("dim", "terms", "_key")

    def __init__(self, dim: int, terms: dict[IndexSet, DividedPowerPoly] | None = None):
        self.dim = dim
        clean: dict[IndexSet, DividedPowerPoly] = {}
        for S, poly in (terms or {}).items():
            S = tuple(S)
            if any(not 1 <= i <= dim for i in S) or list(S) != sorted(set(S)):
                raise ValueError(f"bad index set {S} for dimension {dim}")
            if poly.num_vars != dim:
                raise ValueError("coefficient arity does not match the form dimension")
            if not poly.is_zero():
                clean[S] = poly
        self.terms = clean
        self._key = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def _raw(dim: int, terms: dict) -> "SimplexForm":
        """Wrap an already-clean term dict without re-validating it."""
        self = object.__new__(SimplexForm)
        self.dim = dim
        self.terms = terms
        self._key = None
        return self

    @staticmethod
    def zero(dim: int) -> "SimplexForm":
        return SimplexForm(dim)

    @staticmethod
    def from_poly(poly: DividedPowerPoly) -> "SimplexForm":
        return SimplexForm(poly.num_vars, {(): poly})

    @staticmethod
    def const(dim: int, c) -> "SimplexForm":
        return SimplexForm.from_poly(DividedPowerPoly.const(dim, c))

    @staticmethod
    def one(dim: int) -> "SimplexForm":
        return SimplexForm.const(dim, 1)

    @staticmethod
    def dx(dim: int, i: int) -> "SimplexForm":
        return SimplexForm(dim, {(i,): DividedPowerPoly.one(dim)})

    @staticmethod
    def monomial(dim: int, S, poly: DividedPowerPoly) -> "SimplexForm":
        return SimplexForm(dim, {tuple(S): poly})

    # -- linear structure --------------------------------------------------

    def __add__(self, other: "SimplexForm") -> "SimplexForm":
        self._check(other)
        out = dict(self.terms)
        for S, poly in other.terms.items():
            w = out.get(S)
            s = poly if w is None else w + poly
            if s.is_zero():
                out.pop(S, None)
            else:
                out[S] = s
        return SimplexForm._raw(self.dim, out)

    def __neg__(self) -> "SimplexForm":
        return SimplexForm._raw(self.dim, {S: -p for S, p in self.terms.items()})

    def __sub__(self, other: "SimplexForm") -> "SimplexForm":
        return self + (-other)

    def scale(self, c) -> "SimplexForm":
        if not c:
            return SimplexForm.zero(self.dim)
        return SimplexForm._raw(self.dim, {S: p.scale(c) for S, p in self.terms.items()})

    def scale_poly(self, poly: DividedPowerPoly) -> "SimplexForm":
        out = {}
        for S, p in self.terms.items():
            q = poly * p
            if not q.is_zero():
                out[S] = q
        return SimplexForm._raw(self.dim, out)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {len(S) for S in self.terms}

    def degree(self) -> int | None:
        """The degree of a homogeneous form; None for 0 or mixed degrees."""
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    def component(self, q: int) -> "SimplexForm":
        return SimplexForm(self.dim, {S: p for S, p in self.terms.items() if len(S) == q})

    def max_degree(self) -> int:
        return max((len(S) for S in self.terms), default=0)

    def _check(self, other: "SimplexForm"):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def key(self):
        if self._key is None:
            self._key = (self.dim, tuple(sorted((S, p.key()) for S, p in self.terms.items())))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplexForm) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for S, poly in sorted(self.terms.items()):
            dxs = "^".join(f"dx{i}" for i in S)
            bits.append(f"({poly!r})" + (f" {dxs}" if dxs else ""))
        return " + ".join(bits)


def wedge(omega: SimplexForm, eta: SimplexForm) -> SimplexForm:
    """Graded-commutative product with the Koszul sign rule on dx factors."""
    omega._check(eta)
    out: dict[IndexSet, DividedPowerPoly] = {}
    for S, p in omega.terms.items():
        for T, q in eta.terms.items():
            merged, sign = sort_with_sign(S + T)
            if merged is None:
                continue
            poly = (p * q).scale(sign)
            w = out.get(merged)
            s = poly if w is None else w + poly
            if s.is_zero():
                out.pop(merged, None)
            else:
                out[merged] = s
    return SimplexForm._raw(omega.dim, out)


def exterior_d(omega: SimplexForm) -> SimplexForm:
    """The exterior derivative, raising degree by one."""
    out: dict[IndexSet, DividedPowerPoly] = {}
    for S, poly in omega.terms.items():
        for i in range(1, omega.dim + 1):
            if i in S:
                continue
            df = dp_partial(i, poly)
            if df.is_zero():
                continue
            merged, sign = sort_with_sign((i,) + S)
            piece = df.scale(sign)
            w = out.get(merged)
            s = piece if w is None else w + piece
            if s.is_zero():
                out.pop(merged, None)
            else:
                out[merged] = s
    return SimplexForm._raw(omega.dim, out)


def form_pullback(alpha: OrdinalMap, omega: SimplexForm) -> SimplexForm:
    """Pull a form on the target simplex back along alpha.

    Coefficients pull back variable-wise; dx_i goes to dx of the image
    variable, with terms dying when the image variable dies or repeats.
    """
    if omega.dim != alpha.target:
        raise ValueError(f"form lives on dim {omega.dim}, map targets [{alpha.target}]")
    m = alpha.source
    dx_slot = _pullback_slots(alpha.target, m, alpha.images)
    out: dict[IndexSet, DividedPowerPoly] = {}
    for S, poly in omega.terms.items():
        images = []
        dead = False
        for i in S:
            t = dx_slot[i]
            # dx_0 would be d(theta) = 0, so a 0 slot also kills the term
            if t is None or t == 0:
                dead = True
                break
            images.append(t)
        if dead:
            continue
        merged, sign = sort_with_sign(tuple(images))
        if merged is None:
            continue
        pulled = dp_pullback(alpha, poly).scale(sign)
        if pulled.is_zero():
            continue
        w = out.get(merged)
        s = pulled if w is None else w + pulled
        if s.is_zero():
            out.pop(merged, None)
        else:
            out[merged] = s
    return SimplexForm._raw(m, out)


@dataclass
class ChainSplit:
    """Decomposition of a form on the (n+r)-simplex along a maximal chain.

    ``pairs`` holds (fiber_part on the big simplex, base_part on the base
    simplex) with reassembly sum(fiber ^ pullback_along_base_projection(base))
    equal to the input.  ``top_fiber_coeffs`` aligns with ``pairs`` and holds
    the coefficient of the full fiber volume in each fiber part.
    """

    chain: MaximalChain
    pairs: list[tuple[SimplexForm, SimplexForm]]
    top_fiber_coeffs: list[DividedPowerPoly]


def chain_decompose(omega: SimplexForm, chain: MaximalChain) -> ChainSplit:
    """Split each monomial into fiber and base factors along the chain.

    Base variables sit at the positions picked by the chain's base section;
    everything else (theta included) goes to the fiber factor, with the
    Koszul sign of moving the base differentials to the right.
    """
    n, r = chain.n, chain.r
    if omega.dim != n + r:
        raise ValueError(f"form dimension {omega.dim} does not match chain grid ({n},{r})")
    b, f, _ = chain_sections(chain)
    base_positions = [b(i) for i in range(1, n + 1)]
    base_set = set(base_positions)
    pos_to_base = {p: i for i, p in enumerate(base_positions, start=1)}
    fiber_volume = tuple(f(i) for i in range(1, r + 1))

    grouped: dict[tuple[IndexSet, tuple], SimplexForm] = {}
    for S, poly in omega.terms.items():
        S_base = tuple(i for i in S if i in base_set)
        S_fib = tuple(i for i in S if i not in base_set)
        # sign of reordering dx_S into dx_{S_fib} dx_{S_base}: parity of
        # base/fiber inversions in the concatenation
        sign = 1
        for sb in S_base:
            for sf in S_fib:
                if sb < sf:
                    sign = -sign
        for exps, coef in poly.terms.items():
            base_exps = [0] * (n + 1)
            fib_exps = list(exps)
            for pos in base_positions:
                base_exps[pos_to_base[pos]] = exps[pos]
                fib_exps[pos] = 0
            fib_exps[0] = exps[0]
            base_exps[0] = 0
            base_key = (tuple(pos_to_base[i] for i in S_base), tuple(base_exps))
            fib_term = SimplexForm(
                n + r,
                {S_fib: DividedPowerPoly(n + r, {tuple(fib_exps): sign * coef})},
            )
            if base_key in grouped:
                grouped[base_key] = grouped[base_key] + fib_term
            else:
                grouped[base_key] = fib_term

    pairs: list[tuple[SimplexForm, SimplexForm]] = []
    tops: list[DividedPowerPoly] = []
    for (base_dxs, base_exps), fib in sorted(grouped.items(), key=lambda kv: kv[0]):
        base = SimplexForm(n, {base_dxs: DividedPowerPoly(n, {base_exps: 1})})
        pairs.append((fib, base))
        tops.append(fib.terms.get(fiber_volume, DividedPowerPoly.zero(n + r)))
    return ChainSplit(chain, pairs, tops)
