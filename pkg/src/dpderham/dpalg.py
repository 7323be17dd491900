"""Divided power polynomial algebras and their canonical morphisms.

``DividedPowerPoly`` models the free divided power algebra on variables
theta, x_1, ..., x_n over the integers: monomials are products of divided
powers ``x_i^[N]`` (think ``x_i**N / N!`` without ever writing the
denominator), so all of simplex calculus stays torsion-aware.  Variable
index 0 is always theta, the unit-like coefficient variable; it is never
integrated over and never differentiated.

``RationalPoly`` is the ordinary polynomial ring over Q that the divided
power ring embeds into; it serves as the independent oracle for products,
derivatives and integrals everywhere in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ordinals import OrdinalMap

Exps = tuple[int, ...]


def _merge_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


class DividedPowerPoly:
    """A sparse divided power polynomial in theta, x_1, ..., x_n.

    ``num_vars`` is n; exponent tuples have length n+1 with slot 0 for theta.
    Instances are immutable; all operations return fresh objects.
    """

    __slots__ = ("num_vars", "terms", "_key")

    def __init__(self, num_vars: int, terms: dict[Exps, int] | None = None):
        self.num_vars = num_vars
        clean: dict[Exps, int] = {}
        for exps, coef in (terms or {}).items():
            if len(exps) != num_vars + 1:
                raise ValueError(f"exponent tuple {exps} has wrong length for {num_vars} variables")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if coef:
                clean[tuple(exps)] = coef
        self.terms = clean
        self._key = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def _raw(num_vars: int, terms: dict) -> "DividedPowerPoly":
        """Wrap an already-clean term dict without re-validating it."""
        self = object.__new__(DividedPowerPoly)
        self.num_vars = num_vars
        self.terms = terms
        self._key = None
        return self

    @staticmethod
    def zero(num_vars: int) -> "DividedPowerPoly":
        return DividedPowerPoly(num_vars)

    @staticmethod
    def const(num_vars: int, c) -> "DividedPowerPoly":
        return DividedPowerPoly(num_vars, {(0,) * (num_vars + 1): c})

    @staticmethod
    def one(num_vars: int) -> "DividedPowerPoly":
        return DividedPowerPoly.const(num_vars, 1)

    @staticmethod
    def var(num_vars: int, i: int, power: int = 1) -> "DividedPowerPoly":
        """The divided power ``x_i^[power]``; i = 0 gives a theta power."""
        if not 0 <= i <= num_vars:
            raise ValueError(f"variable index {i} out of range")
        exps = [0] * (num_vars + 1)
        exps[i] = power
        return DividedPowerPoly(num_vars, {tuple(exps): 1})

    @staticmethod
    def theta(num_vars: int, power: int = 1) -> "DividedPowerPoly":
        return DividedPowerPoly.var(num_vars, 0, power)

    # -- ring structure ----------------------------------------------------

    def __add__(self, other: "DividedPowerPoly") -> "DividedPowerPoly":
        self._check_arity(other)
        return DividedPowerPoly._raw(self.num_vars, _merge_add(self.terms, other.terms))

    def __neg__(self) -> "DividedPowerPoly":
        return DividedPowerPoly._raw(self.num_vars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "DividedPowerPoly") -> "DividedPowerPoly":
        return self + (-other)

    def __mul__(self, other: "DividedPowerPoly") -> "DividedPowerPoly":
        """Divided power product: x^[a] * x^[b] = C(a+b, a) * x^[a+b] per variable."""
        self._check_arity(other)
        out: dict[Exps, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                coef = c1 * c2
                for a, b in zip(e1, e2):
                    if a and b:
                        coef *= math.comb(a + b, a)
                exps = tuple(a + b for a, b in zip(e1, e2))
                w = out.get(exps, 0) + coef
                if w:
                    out[exps] = w
                else:
                    out.pop(exps, None)
        return DividedPowerPoly._raw(self.num_vars, out)

    def scale(self, c) -> "DividedPowerPoly":
        if not c:
            return DividedPowerPoly.zero(self.num_vars)
        return DividedPowerPoly._raw(self.num_vars, {k: c * v for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self):
        return self.terms.get((0,) * (self.num_vars + 1), 0)

    def theta_only(self) -> bool:
        """True when only theta (and the constant) appears."""
        return all(all(e == 0 for e in exps[1:]) for exps in self.terms)

    def max_exponent(self) -> int:
        return max((max(e) for e in self.terms), default=0)

    def _check_arity(self, other: "DividedPowerPoly"):
        if self.num_vars != other.num_vars:
            raise ValueError(f"arity mismatch: {self.num_vars} vs {other.num_vars}")

    # -- comparisons -------------------------------------------------------

    def key(self):
        if self._key is None:
            self._key = (self.num_vars, tuple(sorted(self.terms.items())))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, DividedPowerPoly) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps, coef in sorted(self.terms.items()):
            factors = [] if coef == 1 and any(exps) else [str(coef)]
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                name = "theta" if i == 0 else f"x{i}"
                factors.append(name if e == 1 else f"{name}^[{e}]")
            bits.append("*".join(factors) or str(coef))
        return " + ".join(bits)


class RationalPoly:
    """A sparse ordinary polynomial over Q in x_0, ..., x_n (x_0 = theta's image)."""

    __slots__ = ("num_vars", "terms", "_key")

    def __init__(self, num_vars: int, terms: dict[Exps, Fraction] | None = None):
        self.num_vars = num_vars
        clean: dict[Exps, Fraction] = {}
        for exps, coef in (terms or {}).items():
            if len(exps) != num_vars + 1:
                raise ValueError(f"exponent tuple {exps} has wrong length for {num_vars} variables")
            coef = Fraction(coef)
            if coef:
                clean[tuple(exps)] = coef
        self.terms = clean
        self._key = None

    @staticmethod
    def zero(num_vars: int) -> "RationalPoly":
        return RationalPoly(num_vars)

    @staticmethod
    def const(num_vars: int, c) -> "RationalPoly":
        return RationalPoly(num_vars, {(0,) * (num_vars + 1): Fraction(c)})

    @staticmethod
    def one(num_vars: int) -> "RationalPoly":
        return RationalPoly.const(num_vars, 1)

    @staticmethod
    def var(num_vars: int, i: int, power: int = 1) -> "RationalPoly":
        exps = [0] * (num_vars + 1)
        exps[i] = power
        return RationalPoly(num_vars, {tuple(exps): Fraction(1)})

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        if self.num_vars != other.num_vars:
            raise ValueError("arity mismatch")
        return RationalPoly(self.num_vars, _merge_add(self.terms, other.terms))

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(self.num_vars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return self + (-other)

    def __mul__(self, other: "RationalPoly") -> "RationalPoly":
        if self.num_vars != other.num_vars:
            raise ValueError("arity mismatch")
        out: dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                w = out.get(exps, 0) + c1 * c2
                if w:
                    out[exps] = w
                else:
                    out.pop(exps, None)
        return RationalPoly(self.num_vars, out)

    def scale(self, c) -> "RationalPoly":
        c = Fraction(c)
        return RationalPoly(self.num_vars, {k: c * v for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def differentiate(self, i: int) -> "RationalPoly":
        out: dict[Exps, Fraction] = {}
        for exps, coef in self.terms.items():
            if exps[i] == 0:
                continue
            e = list(exps)
            e[i] -= 1
            out[tuple(e)] = out.get(tuple(e), Fraction(0)) + coef * exps[i]
        return RationalPoly(self.num_vars, out)

    def antiderivative(self, i: int) -> "RationalPoly":
        out: dict[Exps, Fraction] = {}
        for exps, coef in self.terms.items():
            e = list(exps)
            e[i] += 1
            out[tuple(e)] = coef / e[i]
        return RationalPoly(self.num_vars, out)

    def substitute(self, i: int, value) -> "RationalPoly":
        """Substitute x_i by a constant (int/Fraction) or by another variable index.

        ``value`` is either a number or a pair ("var", j).
        """
        out = RationalPoly.zero(self.num_vars)
        for exps, coef in self.terms.items():
            e = list(exps)
            n = e[i]
            e[i] = 0
            if isinstance(value, tuple):
                _, j = value
                e[j] += n
                out = out + RationalPoly(self.num_vars, {tuple(e): coef})
            else:
                c = coef * Fraction(value) ** n
                if c:
                    out = out + RationalPoly(self.num_vars, {tuple(e): c})
        return out

    def key(self):
        if self._key is None:
            self._key = (self.num_vars, tuple(sorted(self.terms.items())))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalPoly) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps, coef in sorted(self.terms.items()):
            factors = [str(coef)]
            for i, e in enumerate(exps):
                if e:
                    factors.append(f"x{i}" + (f"**{e}" if e > 1 else ""))
            bits.append("*".join(factors))
        return " + ".join(bits)


# -- morphisms -------------------------------------------------------------


@lru_cache(maxsize=None)
def _pullback_slots(target: int, source: int, images: tuple) -> tuple:
    """Target-variable slot table for pulling back along an ordinal map.

    Entry i is the source variable receiving x_i, or None when x_i dies;
    entry 0 is theta, which always stays put.
    """
    top = images[source]
    slots: list[int | None] = [0]
    for i in range(1, target + 1):
        if top >= i:
            slots.append(min(j for j in range(source + 1) if images[j] >= i))
        else:
            slots.append(None)
    return tuple(slots)


def dp_pullback(alpha: OrdinalMap, f: DividedPowerPoly) -> DividedPowerPoly:
    """Pull a divided power polynomial on the target simplex back along alpha.

    Each x_i goes to x_{min{j : alpha(j) >= i}} when alpha's top value reaches
    i and to 0 otherwise; theta stays theta.  Collisions of target variables
    pick up the divided power binomial factors.
    """
    n = alpha.target
    m = alpha.source
    if f.num_vars != n:
        raise ValueError(f"polynomial lives on {f.num_vars} variables, map targets [{n}]")
    slot = _pullback_slots(n, m, alpha.images)
    out: dict[Exps, int] = {}
    for exps, coef in f.terms.items():
        dead = False
        acc = [0] * (m + 1)
        for i, e in enumerate(exps):
            if e == 0:
                continue
            t = slot[i]
            if t is None:
                dead = True
                break
            if acc[t]:
                coef *= math.comb(acc[t] + e, e)
            acc[t] += e
        if dead:
            continue
        key = tuple(acc)
        w = out.get(key, 0) + coef
        if w:
            out[key] = w
        else:
            out.pop(key, None)
    return DividedPowerPoly._raw(m, out)


def dp_partial(i: int, f: DividedPowerPoly) -> DividedPowerPoly:
    """The derivation sending x_i^[N] to x_i^[N-1]; theta is constant."""
    if i < 1 or i > f.num_vars:
        raise ValueError(f"cannot differentiate by variable {i} (theta is a constant)")
    out: dict[Exps, int] = {}
    for exps, coef in f.terms.items():
        if exps[i] == 0:
            continue
        e = list(exps)
        e[i] -= 1
        out[tuple(e)] = coef
    return DividedPowerPoly._raw(f.num_vars, out)


def dp_embed_rational(f: DividedPowerPoly) -> RationalPoly:
    """The injective ring morphism x^[N] -> x**N / N! into Q[x_0, ..., x_n]."""
    out: dict[Exps, Fraction] = {}
    for exps, coef in f.terms.items():
        denom = 1
        for e in exps:
            denom *= math.factorial(e)
        out[exps] = Fraction(coef, denom)
    return RationalPoly(f.num_vars, out)


def field_realize(f: DividedPowerPoly) -> RationalPoly:
    """Realize over Q: theta^[N] -> 1/N!, x_i^[N] -> x_i**N / N!.

    The result keeps arity n+1 with slot 0 unused (theta has been evaluated).
    """
    return dp_embed_rational(f).substitute(0, 1)


@dataclass(frozen=True)
class CoeffTarget:
    """Selector for the canonical coefficient-change morphisms.

    tags: "rational-divided", "localized" (with prime p), "drop-theta",
    "field".
    """

    tag: str
    prime: int | None = None

    def __post_init__(self):
        if self.tag not in ("rational-divided", "localized", "drop-theta", "field"):
            raise ValueError(f"unknown coefficient target {self.tag!r}")
        if self.tag == "localized":
            p = self.prime
            if p is None or p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
                raise ValueError(f"{self.prime} is not a prime")


def dp_coeff_change(f: DividedPowerPoly, target: CoeffTarget):
    """Apply one of the canonical coefficient-change morphisms.

    "rational-divided" and "localized" produce a DividedPowerPoly with
    Fraction coefficients and theta eliminated; "drop-theta" stays integral;
    "field" produces the RationalPoly realization.  A localized result whose
    coefficients have denominator divisible by p is rejected: the input was
    not p-integral.
    """
    if target.tag == "field":
        return field_realize(f)
    out: dict[Exps, object] = {}
    for exps, coef in f.terms.items():
        n0 = exps[0]
        stripped = (0,) + exps[1:]
        if target.tag == "drop-theta":
            if n0 != 0:
                continue
            c = coef
        elif target.tag == "rational-divided":
            c = Fraction(coef, math.factorial(n0))
        else:  # localized
            c = Fraction(coef * target.prime**n0, math.factorial(n0))
        w = out.get(stripped, 0) + c
        if w:
            out[stripped] = w
        else:
            out.pop(stripped, None)
    result = DividedPowerPoly(f.num_vars, out)
    if target.tag == "localized":
        for coef in result.terms.values():
            if isinstance(coef, Fraction) and coef.denominator % target.prime == 0:
                raise ValueError(
                    f"result is not {target.prime}-integral: coefficient {coef}"
                )
    return result
