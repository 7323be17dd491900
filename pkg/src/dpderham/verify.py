"""Seeded verification suites for the engine's identities.

Each suite returns a report dict: command, parameters, number of trials and
a list of counterexample payloads.  An empty failure list means the
identity held exactly in every trial.  The CLI wraps these; the test suite
calls them directly.
"""

from __future__ import annotations

from .bar import (
    BarElement,
    BarWord,
    II,
    bar_d,
    bar_shuffle_elements,
    cc_d,
    reduce_cc,
    shuffle_interleavings,
)
from .dpalg import DividedPowerPoly, dp_embed_rational, RationalPoly
from .derham import SimplexForm, exterior_d, form_pullback, wedge
from .integrate import (
    BoundSymbol,
    definite_int,
    fiber_int_simplex,
)
from .jsonio import space_from_preset
from .ordinals import OrdinalMap
from .randgen import FormGenerator
from .sforms import (
    d_form,
    endpoint,
    form_at,
    iterated_integral_at,
    stokes_residual,
    wedge_form,
)


def _report(command: str, seed: int, trials: int, failures: list, **params) -> dict:
    out = {"command": command, "seed": seed, "trials": trials}
    out.update(params)
    out["failures"] = failures
    return out


# -- Stokes ----------------------------------------------------------------


def verify_stokes(space_preset: str, r: int, seed: int, trials: int,
                  max_exp: int = 3) -> dict:
    space = space_from_preset(space_preset)
    gen = FormGenerator(seed, max_exp=max_exp)
    failures = []
    for trial in range(trials):
        F = gen.product_form(space, r)
        res = stokes_residual(F)
        if not res.is_zero():
            failures.append({"trial": trial, "space": space_preset, "r": r})
    return _report("stokes", seed, trials, failures, space=space_preset, r=r)


# -- naturality of fiberwise integration ----------------------------------


def verify_naturality(seed: int, trials: int = 25, max_nm: int = 3,
                      max_r: int = 2, max_exp: int = 2) -> dict:
    """alpha* of the fiber integral equals the fiber integral of the
    base-restricted family, for every ordinal map with source and target
    bounded by max_nm."""
    gen = FormGenerator(seed, max_exp=max_exp)
    failures = []
    checked = 0
    for n in range(max_nm + 1):
        base = space_from_preset(f"simplex:{n}")
        top = tuple(range(n + 1))
        for r in range(1, max_r + 1):
            prisms = [gen.product_form(base, r).restrict(top) for _ in range(trials)]
            fints = [fiber_int_simplex(P) for P in prisms]
            for m in range(max_nm + 1):
                for images in _monotone_maps(m, n):
                    alpha = OrdinalMap(n, images)
                    for idx, P in enumerate(prisms):
                        lhs = form_pullback(alpha, fints[idx])
                        rhs = fiber_int_simplex(P.base_restrict(alpha))
                        checked += 1
                        if lhs != rhs:
                            failures.append(
                                {"n": n, "m": m, "r": r, "alpha": list(images),
                                 "trial": idx}
                            )
    return _report("naturality", seed, trials, failures, checked=checked)


def _monotone_maps(m: int, n: int):
    def rec(i, lo):
        if i > m:
            yield ()
            return
        for v in range(lo, n + 1):
            for rest in rec(i + 1, v):
                yield (v,) + rest
    yield from rec(0, 0)


# -- d squared is zero -----------------------------------------------------


def verify_dsquare(space_preset: str, seed: int, trials: int, max_exp: int = 2) -> dict:
    space = space_from_preset(space_preset)
    gen = FormGenerator(seed, max_exp=max_exp)
    failures = []
    for trial in range(trials):
        F = gen.mixed_simplicial_form(space, max(space.dims))
        if not d_form(d_form(F)).is_zero():
            failures.append({"trial": trial, "space": space_preset})
    return _report("dsquare", seed, trials, failures, space=space_preset)


# -- the embedding oracle --------------------------------------------------


def _realize_bound(b: BoundSymbol):
    if b.tag == "theta":
        return ("var", 0)
    if b.tag == "zero":
        return 0
    return ("var", b.index)


def oracle_definite_int(f: DividedPowerPoly, i: int, lo: BoundSymbol,
                        hi: BoundSymbol) -> RationalPoly:
    """Classical symbolic integration over Q of the rational realization."""
    F = dp_embed_rational(f).antiderivative(i)
    upper = F.substitute(i, _realize_bound(hi))
    lower = F.substitute(i, _realize_bound(lo))
    return upper - lower


def verify_embed_oracle(seed: int, trials: int, max_vars: int = 4,
                        max_exp: int = 3) -> dict:
    gen = FormGenerator(seed, max_exp=max_exp)
    failures = []
    for trial in range(trials):
        n = gen.rng.randint(1, max_vars)
        f = gen.poly(n, max_terms=4)
        i = gen.rng.randint(1, n)
        bounds = [BoundSymbol.theta(), BoundSymbol.zero()] + [
            BoundSymbol.var(j) for j in range(1, n + 1) if j != i
        ]
        lo = gen.rng.choice(bounds)
        hi = gen.rng.choice(bounds)
        got = dp_embed_rational(definite_int(f, i, lo, hi))
        want = oracle_definite_int(f, i, lo, hi)
        if got != want:
            failures.append({"trial": trial, "n": n, "i": i,
                             "lo": repr(lo), "hi": repr(hi)})
    return _report("embed-oracle", seed, trials, failures)


# -- the differential of the iterated integral -----------------------------


def diff_identity_residual(forms, path) -> SimplexForm:
    """d of the iterated integral minus its direct expansion; zero exactly."""
    r = len(forms)
    degs = [f.degree() or 0 for f in forms]
    lhs = exterior_d(iterated_integral_at(forms, path))
    rhs = SimplexForm.zero(path.n)
    for i in range(1, r + 1):
        sign = (-1) ** ((sum(degs[: i - 1]) + r) % 2)
        new = list(forms)
        new[i - 1] = d_form(new[i - 1])
        rhs = rhs + iterated_integral_at(new, path).scale(sign)
    for i in range(1, r):
        sign = (-1) ** ((r - 1 - i) % 2)
        new = forms[: i - 1] + [wedge_form(forms[i - 1], forms[i])] + forms[i + 1 :]
        rhs = rhs + iterated_integral_at(new, path).scale(sign)
    if r >= 1:
        sign = (-1) ** (((r - 1) * (degs[0] - 1)) % 2)
        head = form_at(forms[0], endpoint(path, 1))
        rhs = rhs + wedge(head, iterated_integral_at(forms[1:], path)).scale(sign)
        tail = form_at(forms[-1], endpoint(path, 0))
        rhs = rhs - wedge(iterated_integral_at(forms[:-1], path), tail)
    return lhs - rhs


def verify_ii_differential(space_preset: str, seed: int, trials: int,
                           max_r: int = 3, max_deg: int = 2, n_max: int = 2) -> dict:
    space = space_from_preset(space_preset)
    gen = FormGenerator(seed)
    failures = []
    for trial in range(trials):
        r = gen.rng.randint(1, max_r)
        forms = [
            gen.simplicial_form(space, gen.rng.randint(0, min(max_deg, max(space.dims))))
            for _ in range(r)
        ]
        n = gen.rng.randint(0, n_max)
        path = gen.path_simplex(space, n)
        res = diff_identity_residual(forms, path)
        if not res.is_zero():
            failures.append({"trial": trial, "r": r, "n": n})
    return _report("ii-differential", seed, trials, failures, space=space_preset)


# -- shuffle identities ----------------------------------------------------


def shuffle_identity_residual(forms, p: int, path) -> SimplexForm:
    """(int of first p) wedge (int of last q) minus the shuffled sum."""
    shift = [(f.degree() or 0) - 1 for f in forms]
    lhs = wedge(
        iterated_integral_at(forms[:p], path),
        iterated_integral_at(forms[p:], path),
    )
    rhs = SimplexForm.zero(path.n)
    for letters, sign in shuffle_interleavings(
        tuple(forms[:p]), tuple(forms[p:]), shift[:p], shift[p:]
    ):
        rhs = rhs + iterated_integral_at(list(letters), path).scale(sign)
    return lhs - rhs


def verify_ii_shuffle(space_preset: str, seed: int, trials: int,
                      max_pq: int = 4, max_deg: int = 2, n_max: int = 2) -> dict:
    """The shuffle identity for iterated integrals, plus multiplicativity of
    the bar-to-path-space map on random words."""
    space = space_from_preset(space_preset)
    gen = FormGenerator(seed)
    failures = []
    for trial in range(trials):
        p = gen.rng.randint(0, max_pq)
        q = gen.rng.randint(0 if p else 1, max_pq - p)
        forms = [
            gen.simplicial_form(space, gen.rng.randint(0, min(max_deg, max(space.dims))))
            for _ in range(p + q)
        ]
        n = gen.rng.randint(0, n_max)
        path = gen.path_simplex(space, n)
        if not shuffle_identity_residual(forms, p, path).is_zero():
            failures.append({"trial": trial, "kind": "shuffle", "p": p, "q": q, "n": n})
        # multiplicativity on full words
        a = _random_word(gen, space, p, max_deg)
        b = _random_word(gen, space, q, max_deg)
        x, y = BarElement.from_word(a), BarElement.from_word(b)
        lhs = II(x).wedge(II(y)).at(path)
        rhs = II(bar_shuffle_elements(x, y)).at(path)
        if lhs != rhs:
            failures.append({"trial": trial, "kind": "multiplicative", "p": p,
                             "q": q, "n": n})
    return _report("ii-shuffle", seed, trials, failures, space=space_preset)


def _random_word(gen: FormGenerator, space, r: int, max_deg: int) -> BarWord:
    top = max(space.dims)
    left = gen.simplicial_form(space, gen.rng.randint(0, min(max_deg, top)))
    right = gen.simplicial_form(space, gen.rng.randint(0, min(max_deg, top)))
    letters = tuple(
        gen.simplicial_form(space, gen.rng.randint(0, min(max_deg, top)))
        for _ in range(r)
    )
    return BarWord(left, letters, right)


# -- the bar differential --------------------------------------------------


def verify_bar_d2(space_preset: str, seed: int, trials: int, max_r: int = 3,
                  max_deg: int = 2) -> dict:
    space = space_from_preset(space_preset)
    gen = FormGenerator(seed)
    basepoint = space.vertices()[0]
    failures = []
    for trial in range(trials):
        r = gen.rng.randint(0, max_r)
        word = _random_word(gen, space, r, max_deg)
        e = BarElement.from_word(word)
        if not bar_d(bar_d(e)).is_zero():
            failures.append({"trial": trial, "kind": "bar-d2", "r": r})
        red = reduce_cc(e, basepoint)
        if not cc_d(cc_d(red)).is_zero():
            failures.append({"trial": trial, "kind": "cc-d2", "r": r})
    return _report("bar-d2", seed, trials, failures, space=space_preset)


def verify_bar_shuffle_algebra(space_preset: str, seed: int, trials: int,
                               max_r: int = 2, max_deg: int = 2) -> dict:
    """Graded commutativity and associativity of the bar shuffle product."""
    space = space_from_preset(space_preset)
    gen = FormGenerator(seed)
    failures = []
    for trial in range(trials):
        words = [
            BarElement.from_word(
                _random_word(gen, space, gen.rng.randint(0, max_r), max_deg)
            )
            for _ in range(3)
        ]
        x, y, z = words
        dx = _element_degree(x)
        dy = _element_degree(y)
        if dx is not None and dy is not None:
            lhs = bar_shuffle_elements(x, y)
            rhs = bar_shuffle_elements(y, x).scale((-1) ** ((dx * dy) % 2))
            if not (lhs - rhs).is_zero():
                failures.append({"trial": trial, "kind": "commutative"})
        assoc_l = bar_shuffle_elements(bar_shuffle_elements(x, y), z)
        assoc_r = bar_shuffle_elements(x, bar_shuffle_elements(y, z))
        if not (assoc_l - assoc_r).is_zero():
            failures.append({"trial": trial, "kind": "associative"})
    return _report("bar-shuffle", seed, trials, failures, space=space_preset)


def _element_degree(e: BarElement):
    degs = {w.degree() for w, _ in e.terms.values()}
    return degs.pop() if len(degs) == 1 else None


# -- the cochain-map property of the bar-to-path-space map -----------------


def verify_ii_cochain(space_preset: str, seed: int, trials: int,
                      max_r: int = 3, max_deg: int = 2, n_max: int = 2) -> dict:
    space = space_from_preset(space_preset)
    gen = FormGenerator(seed)
    failures = []
    for trial in range(trials):
        r = gen.rng.randint(0, max_r)
        word = _random_word(gen, space, r, max_deg)
        e = BarElement.from_word(word)
        n = gen.rng.randint(0, n_max)
        path = gen.path_simplex(space, n)
        lhs = exterior_d(II(e).at(path))
        rhs = II(bar_d(e)).at(path)
        if lhs != rhs:
            failures.append({"trial": trial, "r": r, "n": n})
    return _report("ii-cochain", seed, trials, failures, space=space_preset)
