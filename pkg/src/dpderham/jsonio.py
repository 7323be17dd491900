"""JSON encoding and decoding of the engine's value types.

Integer coefficients travel as decimal strings (they can exceed double
precision), rationals as "num/den" strings.  Simplicial sets appear only as
named presets; simplex ids inside a space are serialized by a canonical
string form and decoded by lookup against the preset's id table.
"""

from __future__ import annotations

from fractions import Fraction

from .bar import BarElement, BarWord
from .dpalg import DividedPowerPoly, RationalPoly
from .derham import SimplexForm
from .integrate import BoundSymbol, IntegralSpec
from .ordinals import MaximalChain, OrdinalMap
from .sforms import PathSimplex, SimplicialForm
from .sset import (
    Deg,
    FiniteSimplicialSet,
    SimplicialMap,
    boundary,
    circle,
    horn,
    prism,
    product,
    simplex,
)


# -- scalars ---------------------------------------------------------------


def encode_scalar(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def decode_scalar(s: str):
    s = str(s)
    if "/" in s:
        return Fraction(s)
    return int(s)


# -- ordinal maps and chains ----------------------------------------------


def encode_ordinal(a: OrdinalMap) -> dict:
    return {"n": a.target, "images": list(a.images)}


def decode_ordinal(data: dict) -> OrdinalMap:
    return OrdinalMap(int(data["n"]), tuple(int(v) for v in data["images"]))


def encode_chain(c: MaximalChain) -> dict:
    return {"n": c.n, "r": c.r, "steps": c.steps}


def decode_chain(data: dict) -> MaximalChain:
    return MaximalChain.from_steps(int(data["n"]), int(data["r"]), data["steps"])


# -- polynomials -----------------------------------------------------------


def encode_poly(f) -> dict:
    return {
        "n": f.num_vars,
        "terms": [
            {"exps": list(exps), "coef": encode_scalar(c)}
            for exps, c in sorted(f.terms.items())
        ],
    }


def decode_poly(data: dict) -> DividedPowerPoly:
    n = int(data["n"])
    terms: dict = {}
    for item in data.get("terms", []):
        exps = tuple(int(e) for e in item["exps"])
        terms[exps] = terms.get(exps, 0) + decode_scalar(item["coef"])
    return DividedPowerPoly(n, terms)


def decode_rational_poly(data: dict) -> RationalPoly:
    n = int(data["n"])
    terms: dict = {}
    for item in data.get("terms", []):
        exps = tuple(int(e) for e in item["exps"])
        terms[exps] = terms.get(exps, 0) + Fraction(str(item["coef"]))
    return RationalPoly(n, terms)


# -- forms on one simplex --------------------------------------------------


def encode_form(omega: SimplexForm) -> dict:
    return {
        "dim": omega.dim,
        "terms": [
            {"dxs": list(S), "poly": encode_poly(p)}
            for S, p in sorted(omega.terms.items())
        ],
    }


def decode_form(data: dict) -> SimplexForm:
    dim = int(data["dim"])
    out = SimplexForm.zero(dim)
    for item in data.get("terms", []):
        S = tuple(int(i) for i in item["dxs"])
        out = out + SimplexForm.monomial(dim, S, decode_poly(item["poly"]))
    return out


# -- integration bounds ----------------------------------------------------


def encode_bound(b: BoundSymbol) -> str:
    return repr(b)


def decode_bound(s: str) -> BoundSymbol:
    s = str(s)
    if s == "theta":
        return BoundSymbol.theta()
    if s == "0":
        return BoundSymbol.zero()
    if s.startswith("x"):
        return BoundSymbol.var(int(s[1:]))
    raise ValueError(f"unknown bound {s!r}")


def decode_spec(data) -> IntegralSpec:
    steps = tuple(
        (int(item["i"]), decode_bound(item["lo"]), decode_bound(item["hi"]))
        for item in data
    )
    return IntegralSpec(steps)


# -- spaces ----------------------------------------------------------------


def space_from_preset(name: str) -> FiniteSimplicialSet:
    """Build a space from a preset string.

    Presets: simplex:n, boundary:n, horn:n:k, circle, product:A:B:D where A
    and B are themselves presets (colons inside resolved greedily) and D is
    the dimension bound.
    """
    parts = name.split(":")
    if parts[0] == "simplex":
        return simplex(int(parts[1]))
    if parts[0] == "boundary":
        return boundary(int(parts[1]))
    if parts[0] == "horn":
        return horn(int(parts[1]), int(parts[2]))
    if parts[0] == "circle":
        return circle()
    if parts[0] == "prism":
        return prism(int(parts[1]))
    if parts[0] == "product":
        body, d = parts[1:-1], int(parts[-1])
        for split in range(1, len(body)):
            try:
                a = space_from_preset(":".join(body[:split]))
                b = space_from_preset(":".join(body[split:]))
            except (ValueError, IndexError):
                continue
            return product(a, b, d)
        raise ValueError(f"cannot split product preset {name!r}")
    raise ValueError(f"unknown space preset {name!r}")


def encode_simplex_id(t) -> str:
    return repr(t)


def _id_table(space: FiniteSimplicialSet) -> dict:
    return {repr(t): t for t in space.dim_of}


def decode_simplex_id(space: FiniteSimplicialSet, s: str):
    table = _id_table(space)
    if s not in table:
        raise ValueError(f"{s} is not a simplex id of {space.name}")
    return table[s]


# -- simplicial forms, maps and path simplices -----------------------------


def encode_simplicial_form(F: SimplicialForm) -> dict:
    return {
        "space": F.space.name,
        "values": {
            encode_simplex_id(t): encode_form(v)
            for t, v in sorted(F.values.items(), key=lambda kv: repr(kv[0]))
            if not v.is_zero()
        },
    }


def decode_simplicial_form(data: dict, space=None) -> SimplicialForm:
    if space is None:
        space = space_from_preset(data["space"])
    values = {
        decode_simplex_id(space, k): decode_form(v)
        for k, v in data.get("values", {}).items()
    }
    return SimplicialForm(space, values)


def encode_deg(d: Deg) -> dict:
    return {"target": encode_simplex_id(d.target), "word": encode_ordinal(d.word)}


def decode_deg(space: FiniteSimplicialSet, data: dict) -> Deg:
    return Deg(decode_simplex_id(space, data["target"]), decode_ordinal(data["word"]))


def encode_simplicial_map(f: SimplicialMap, source_preset: str, target_preset: str) -> dict:
    return {
        "source": source_preset,
        "target": target_preset,
        "mapping": {
            encode_simplex_id(t): encode_deg(img)
            for t, img in sorted(f.mapping.items(), key=lambda kv: repr(kv[0]))
        },
    }


def decode_simplicial_map(data: dict) -> SimplicialMap:
    source = space_from_preset(data["source"])
    target = space_from_preset(data["target"])
    mapping = {
        decode_simplex_id(source, k): decode_deg(target, v)
        for k, v in data["mapping"].items()
    }
    return SimplicialMap(source, target, mapping)


def encode_path_simplex(p: PathSimplex, target_preset: str) -> dict:
    return {
        "n": p.n,
        "map": encode_simplicial_map(p.phi, f"prism:{p.n}", target_preset),
    }


def decode_path_simplex(data: dict) -> PathSimplex:
    return PathSimplex(int(data["n"]), decode_simplicial_map(data["map"]))


# -- bar words -------------------------------------------------------------


def encode_bar_word(w: BarWord) -> dict:
    return {
        "left": encode_simplicial_form(w.left),
        "letters": [encode_simplicial_form(g) for g in w.letters],
        "right": encode_simplicial_form(w.right),
    }


def decode_bar_word(data: dict, space=None) -> BarWord:
    if space is None:
        space = space_from_preset(data["left"]["space"])
    return BarWord(
        decode_simplicial_form(data["left"], space),
        tuple(decode_simplicial_form(g, space) for g in data.get("letters", [])),
        decode_simplicial_form(data["right"], space),
    )


def encode_bar_element(e: BarElement) -> dict:
    return {
        "space": e.space.name,
        "terms": [
            {"coef": encode_scalar(c), "word": encode_bar_word(w)}
            for _, (w, c) in sorted(e.terms.items())
        ],
    }


def decode_bar_element(data: dict) -> BarElement:
    space = space_from_preset(data["space"])
    out = BarElement(space)
    for item in data.get("terms", []):
        out.add_word(decode_bar_word(item["word"], space), decode_scalar(item["coef"]))
    return out
