"""The two-sided bar complex of the de Rham algebra of a space.

Words are f[g_1|...|g_r]h with all entries simplicial forms on one space;
letters carry the usual degree shift by one, and are normalized modulo
constants (a letter that is a constant multiple of the unit form is zero
and kills its word).  Elements are rational linear combinations of words.
The iterated-integral map sends a word to a lazily evaluated form on the
path space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dpalg import DividedPowerPoly, field_realize
from .derham import SimplexForm, exterior_d, wedge
from .sforms import (
    PathSimplex,
    SimplicialForm,
    constant_form,
    d_form,
    endpoint,
    form_at,
    iterated_integral_at,
    wedge_form,
)


def koszul_sign(perm, degrees) -> int:
    """The sign picked up by permuting graded letters: a factor
    (-1)^(d_i d_j) for every inversion of the permutation."""
    if len(perm) != len(degrees):
        raise ValueError("permutation and degree list lengths differ")
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b] and degrees[perm[a]] % 2 and degrees[perm[b]] % 2:
                sign = -sign
    return sign


def shuffles(p: int, q: int):
    """All (p, q)-shuffle position patterns.

    Yields tuples over {0, 1}: a 0 takes the next letter of the first block,
    a 1 the next of the second.
    """
    if p == 0 and q == 0:
        yield ()
        return
    if p:
        for rest in shuffles(p - 1, q):
            yield (0,) + rest
    if q:
        for rest in shuffles(p, q - 1):
            yield (1,) + rest


def shuffle_interleavings(first, second, degrees_first, degrees_second):
    """Interleave two letter lists in all order-preserving ways.

    Yields (letters, sign) where sign is the Koszul sign of moving each
    second-block letter past the first-block letters it jumps over, computed
    on the supplied (already shifted) degrees.
    """
    p, q = len(first), len(second)
    for pattern in shuffles(p, q):
        letters = []
        sign = 1
        i = j = 0
        for choice in pattern:
            if choice == 0:
                letters.append(first[i])
                # every already-placed second-block letter has jumped past it
                for jj in range(j):
                    if degrees_first[i] % 2 and degrees_second[jj] % 2:
                        sign = -sign
                i += 1
            else:
                letters.append(second[j])
                j += 1
        yield tuple(letters), sign


def _letter_normalize(g: SimplicialForm) -> SimplicialForm | None:
    """Reduce a letter modulo constants; None when the letter is constant."""
    space = g.space
    verts = space.vertices()
    if not verts:
        raise ValueError("space has no vertices")
    scalar = g.values[verts[0]].terms.get(())
    if scalar is not None and not scalar.is_zero():
        g = g - constant_form(space, scalar)
    return None if g.is_zero() else g


def _form_vector(F: SimplicialForm) -> dict:
    """The sparse coordinate vector of a simplicial form."""
    vec = {}
    for t, v in F.values.items():
        for S, poly in v.terms.items():
            for exps, c in poly.terms.items():
                vec[(repr(t), S, exps)] = Fraction(c)
    return vec


class _Span:
    """An incremental basis for the rational span of sparse vectors.

    Rows are kept pivot-normalized and reduced against all earlier rows, so
    expressing a vector is one ordered elimination pass.
    """

    def __init__(self):
        self.rows = []  # (pivot key, normalized row dict)

    def express(self, vec: dict):
        vec = dict(vec)
        coeffs = []
        for pivot, row in self.rows:
            c = vec.get(pivot, 0)
            coeffs.append(c)
            if c:
                for k, rv in row.items():
                    w = vec.get(k, 0) - c * rv
                    if w:
                        vec[k] = w
                    else:
                        vec.pop(k, None)
        return coeffs, vec

    def coords(self, vec: dict) -> dict:
        """Express vec in the basis, extending it when vec is independent."""
        coeffs, rem = self.express(vec)
        out = {i: c for i, c in enumerate(coeffs) if c}
        if rem:
            pivot = min(rem)
            lead = rem[pivot]
            self.rows.append((pivot, {k: v / lead for k, v in rem.items()}))
            out[len(self.rows) - 1] = lead
        return out


def _tensor_expand(words_with_coeffs) -> dict:
    """Expand bar words multilinearly over a basis of their slot forms.

    Takes (slots tuple of SimplicialForm, coeff) pairs; returns the sparse
    tensor coordinates.  The element is zero exactly when this is empty.
    """
    span = _Span()
    cache: dict = {}

    def coords(F: SimplicialForm) -> dict:
        k = F.key()
        got = cache.get(k)
        if got is None:
            got = cache[k] = span.coords(_form_vector(F))
        return got

    total: dict = {}
    for slots, coeff in words_with_coeffs:
        combos = [((), Fraction(coeff))]
        for slot in slots:
            cs = coords(slot)
            combos = [
                (idx + (i,), c * ci) for idx, c in combos for i, ci in cs.items()
            ]
        for idx, c in combos:
            w = total.get(idx, 0) + c
            if w:
                total[idx] = w
            else:
                total.pop(idx, None)
    return total


def _form_degree(F: SimplicialForm) -> int:
    degs = F.degrees()
    if not degs:
        return 0
    if len(degs) > 1:
        raise ValueError("bar entries must be homogeneous")
    return degs.pop()


@dataclass(frozen=False)
class BarWord:
    """A word f[g_1|...|g_r]h of homogeneous simplicial forms."""

    left: SimplicialForm
    letters: tuple
    right: SimplicialForm

    def __post_init__(self):
        for entry in (self.left, *self.letters, self.right):
            _form_degree(entry)

    @property
    def r(self) -> int:
        return len(self.letters)

    def degree(self) -> int:
        return (
            _form_degree(self.left)
            + sum(_form_degree(g) - 1 for g in self.letters)
            + _form_degree(self.right)
        )

    def key(self):
        return (self.left.key(), tuple(g.key() for g in self.letters), self.right.key())


class BarElement:
    """A rational linear combination of bar words over one space.

    Words are normalized on entry: each letter is reduced modulo constants,
    and a constant letter kills the word.
    """

    def __init__(self, space):
        self.space = space
        self.terms: dict = {}  # key -> (BarWord, Fraction)

    @staticmethod
    def from_word(word: BarWord, coeff=1) -> "BarElement":
        out = BarElement(word.left.space)
        out.add_word(word, Fraction(coeff))
        return out

    @staticmethod
    def zero(space) -> "BarElement":
        return BarElement(space)

    def add_word(self, word: BarWord, coeff):
        coeff = Fraction(coeff)
        if not coeff or word.left.is_zero() or word.right.is_zero():
            return
        letters = []
        for g in word.letters:
            g = _letter_normalize(g)
            if g is None:
                return
            letters.append(g)
        word = BarWord(word.left, tuple(letters), word.right)
        k = word.key()
        if k in self.terms:
            w, c = self.terms[k]
            c += coeff
            if c:
                self.terms[k] = (w, c)
            else:
                del self.terms[k]
        else:
            self.terms[k] = (word, coeff)

    def __add__(self, other: "BarElement") -> "BarElement":
        out = BarElement(self.space)
        for w, c in self.terms.values():
            out.add_word(w, c)
        for w, c in other.terms.values():
            out.add_word(w, c)
        return out

    def scale(self, c) -> "BarElement":
        out = BarElement(self.space)
        for w, k in self.terms.values():
            out.add_word(w, k * Fraction(c))
        return out

    def __neg__(self) -> "BarElement":
        return self.scale(-1)

    def __sub__(self, other: "BarElement") -> "BarElement":
        return self + (-other)

    def is_zero(self) -> bool:
        """Exact zero test in the tensor product: words are multilinear in
        their slots, so cancellation is decided by basis expansion."""
        if not self.terms:
            return True
        return not _tensor_expand(
            ((w.left, *w.letters, w.right), c) for w, c in self.terms.values()
        )

    def words(self):
        return list(self.terms.values())

    def key(self):
        return tuple(sorted((k, c) for k, (_, c) in self.terms.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, BarElement) and (self - other).is_zero()


def bar_d(e: BarElement) -> BarElement:
    """The bar differential d1 + d2."""
    out = BarElement(e.space)
    for word, coeff in e.terms.values():
        f, gs, h = word.left, word.letters, word.right
        r = len(gs)
        df = _form_degree(f)
        shift = [_form_degree(g) - 1 for g in gs]

        def nu(i):
            return sum(shift[:i])

        # d1: differentials of the entries
        out.add_word(BarWord(d_form(f), gs, h), coeff)
        for i in range(1, r + 1):
            sign = -((-1) ** ((df + nu(i - 1)) % 2))
            new = gs[: i - 1] + (d_form(gs[i - 1]),) + gs[i:]
            out.add_word(BarWord(f, new, h), coeff * sign)
        out.add_word(BarWord(f, gs, d_form(h)), coeff * (-1) ** ((df + nu(r)) % 2))
        # d2: merges of neighbours
        if r >= 1:
            out.add_word(
                BarWord(wedge_form(f, gs[0]), gs[1:], h), coeff * (-1) ** (df % 2)
            )
            for i in range(1, r):
                sign = (-1) ** ((df + nu(i)) % 2)
                new = gs[: i - 1] + (wedge_form(gs[i - 1], gs[i]),) + gs[i + 1 :]
                out.add_word(BarWord(f, new, h), coeff * sign)
            out.add_word(
                BarWord(f, gs[:-1], wedge_form(gs[-1], h)),
                coeff * (-1) ** ((df + nu(r - 1) + 1) % 2),
            )
    return out


def bar_shuffle(a: BarWord, b: BarWord) -> BarElement:
    """The shuffle product of two bar words."""
    if a.left.space.name != b.left.space.name:
        raise ValueError("words live on different spaces")
    f, h = a.left, a.right
    f2, h2 = b.left, b.right
    shift_a = [_form_degree(g) - 1 for g in a.letters]
    shift_b = [_form_degree(g) - 1 for g in b.letters]
    outer_exp = (
        _form_degree(h) * _form_degree(f2)
        + sum(shift_a) * _form_degree(f2)
        + _form_degree(h) * sum(shift_b)
    )
    outer = (-1) ** (outer_exp % 2)
    out = BarElement(a.left.space)
    new_left = wedge_form(f, f2)
    new_right = wedge_form(h, h2)
    if new_left.is_zero() or new_right.is_zero():
        return out
    for letters, sign in shuffle_interleavings(a.letters, b.letters, shift_a, shift_b):
        out.add_word(BarWord(new_left, letters, new_right), outer * sign)
    return out


def bar_shuffle_elements(x: BarElement, y: BarElement) -> BarElement:
    out = BarElement(x.space)
    for wa, ca in x.terms.values():
        for wb, cb in y.terms.values():
            out = out + bar_shuffle(wa, wb).scale(ca * cb)
    return out


# -- the reduced (basepoint-collapsed) complex -----------------------------


def _evaluate_at_vertex(F: SimplicialForm, x) -> Fraction:
    """The rational realization of a form's value at a vertex."""
    scalar = F.values[x].terms.get(())
    if scalar is None:
        return Fraction(0)
    realized = field_realize(scalar)
    return realized.terms.get((0,), Fraction(0))


class ReducedBarElement:
    """An element of the basepoint-collapsed bar complex: letter lists only."""

    def __init__(self, space, basepoint):
        if basepoint not in space.dim_of or space.dim_of[basepoint] != 0:
            raise ValueError(f"{basepoint!r} is not a vertex")
        self.space = space
        self.basepoint = basepoint
        self.terms: dict = {}  # key -> (letters tuple, Fraction)

    def add_letters(self, letters: tuple, coeff):
        coeff = Fraction(coeff)
        if not coeff:
            return
        normalized = []
        for g in letters:
            g = _letter_normalize(g)
            if g is None:
                return
            normalized.append(g)
        letters = tuple(normalized)
        k = tuple(g.key() for g in letters)
        if k in self.terms:
            ls, c = self.terms[k]
            c += coeff
            if c:
                self.terms[k] = (ls, c)
            else:
                del self.terms[k]
        else:
            self.terms[k] = (letters, coeff)

    def __add__(self, other: "ReducedBarElement") -> "ReducedBarElement":
        out = ReducedBarElement(self.space, self.basepoint)
        for ls, c in self.terms.values():
            out.add_letters(ls, c)
        for ls, c in other.terms.values():
            out.add_letters(ls, c)
        return out

    def is_zero(self) -> bool:
        if not self.terms:
            return True
        return not _tensor_expand(
            (letters, c) for letters, c in self.terms.values()
        )

    def key(self):
        return tuple(sorted((k, c) for k, (_, c) in self.terms.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReducedBarElement) or self.basepoint != other.basepoint:
            return False
        diff = ReducedBarElement(self.space, self.basepoint)
        for ls, c in self.terms.values():
            diff.add_letters(ls, c)
        for ls, c in other.terms.values():
            diff.add_letters(ls, -c)
        return diff.is_zero()

    def inject(self) -> BarElement:
        """Lift back to the bar complex with unit end forms."""
        unit = constant_form(self.space, DividedPowerPoly.one(0))
        out = BarElement(self.space)
        for letters, coeff in self.terms.values():
            out.add_word(BarWord(unit, letters, unit), coeff)
        return out


def reduce_cc(e: BarElement, basepoint) -> ReducedBarElement:
    """Collapse the end forms to their rational value at the basepoint."""
    out = ReducedBarElement(e.space, basepoint)
    for word, coeff in e.terms.values():
        c = (
            coeff
            * _evaluate_at_vertex(word.left, basepoint)
            * _evaluate_at_vertex(word.right, basepoint)
        )
        out.add_letters(word.letters, c)
    return out


def cc_d(e: ReducedBarElement) -> ReducedBarElement:
    """The differential of the reduced complex: bar_d followed by reduction."""
    return reduce_cc(bar_d(e.inject()), e.basepoint)


# -- the iterated-integral map ---------------------------------------------


def ii_sign(word: BarWord) -> int:
    exp = sum((word.r - i) * (_form_degree(g) - 1) for i, g in enumerate(word.letters, 1))
    return (-1) ** (exp % 2)


def ii_word_at(word: BarWord, path: PathSimplex) -> SimplexForm:
    """The iterated-integral image of one bar word, evaluated at a path simplex."""
    core = iterated_integral_at(word.letters, path)
    if core.is_zero():
        return core
    left = form_at(word.left, endpoint(path, 1))
    right = form_at(word.right, endpoint(path, 0))
    return wedge(wedge(left, core), right).scale(ii_sign(word))


class PathSpaceForm:
    """A lazily evaluated form on the path space of X."""

    def __init__(self, evaluator):
        self._evaluator = evaluator

    def at(self, path: PathSimplex) -> SimplexForm:
        return self._evaluator(path)

    def d(self) -> "PathSpaceForm":
        return PathSpaceForm(lambda path: exterior_d(self.at(path)))

    def wedge(self, other: "PathSpaceForm") -> "PathSpaceForm":
        return PathSpaceForm(lambda path: wedge(self.at(path), other.at(path)))


def II(e) -> PathSpaceForm:
    """The iterated-integral cochain algebra map, as a lazy path-space form."""
    if isinstance(e, ReducedBarElement):
        e = e.inject()

    def evaluate(path: PathSimplex) -> SimplexForm:
        total = SimplexForm.zero(path.n)
        for word, coeff in e.terms.values():
            piece = ii_word_at(word, path)
            if not piece.is_zero():
                total = total + piece.scale(coeff)
        return total

    return PathSpaceForm(evaluate)
