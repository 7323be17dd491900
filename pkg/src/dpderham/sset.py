"""Finite simplicial sets in Eilenberg-Zilber normal form.

A space is stored as its nondegenerate simplices plus, for each face of a
nondegenerate simplex, a pointer to a nondegenerate simplex together with
the degeneracy word expressing the face as a degeneration of it.  Every
other simplex is materialized on demand by ``act``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .ordinals import OrdinalMap, compose, epi_mono_factor

SimplexId = object  # tuples for standard simplices, strings/nested tuples elsewhere


@dataclass(frozen=True)
class Deg:
    """A possibly-degenerate simplex: ``word* (target)`` with target nondegenerate."""

    target: SimplexId
    word: OrdinalMap

    def __post_init__(self):
        if not self.word.is_surjective():
            raise ValueError("degeneracy word must be surjective")

    @property
    def dim(self) -> int:
        return self.word.source

    def is_nondegenerate(self) -> bool:
        return self.word.is_identity()


class FiniteSimplicialSet:
    """A simplicial set with finitely many nondegenerate simplices.

    ``dims`` maps each dimension to its tuple of nondegenerate simplex ids;
    ``faces`` maps (id, i) to the Deg pointer for the i-th face.  ``kind``
    records how the space was built ("simplex", "product", ...) so helpers
    like vertex-path lookup can recurse through products.
    """

    def __init__(self, name, dims, faces, dim_of, kind=None, check=True):
        self.name = name
        self.dims: dict[int, tuple] = dims
        self.faces: dict[tuple, Deg] = faces
        self.dim_of: dict = dim_of
        self.kind = kind or ("opaque",)
        if check:
            self.validate()

    @property
    def max_dim(self) -> int:
        return max((d for d, ids in self.dims.items() if ids), default=0)

    def simplices(self, m: int) -> tuple:
        return self.dims.get(m, ())

    def all_simplices(self):
        for m in sorted(self.dims):
            yield from self.dims[m]

    def vertices(self) -> tuple:
        return self.dims.get(0, ())

    def face(self, t: SimplexId, i: int) -> Deg:
        return self.faces[(t, i)]

    def act(self, t: SimplexId, alpha: OrdinalMap) -> Deg:
        """The simplex alpha*(t), resolved to its nondegenerate normal form."""
        if alpha.target != self.dim_of[t]:
            raise ValueError("ordinal map does not match the simplex dimension")
        while True:
            missing = next(
                (j for j in range(alpha.target + 1) if j not in set(alpha.images)), None
            )
            if missing is None:
                return Deg(t, alpha)
            ptr = self.faces[(t, missing)]
            inner = OrdinalMap(
                alpha.target - 1,
                tuple(v - 1 if v > missing else v for v in alpha.images),
            )
            alpha = compose(ptr.word, inner)
            t = ptr.target

    def act_deg(self, d: Deg, alpha: OrdinalMap) -> Deg:
        return self.act(d.target, compose(d.word, alpha))

    def validate(self):
        """Check the simplicial identities d_i d_j = d_{j-1} d_i (i < j)."""
        for m, ids in self.dims.items():
            if m < 2:
                continue
            for t in ids:
                for j in range(m + 1):
                    for i in range(j):
                        left = self.act_deg(self.faces[(t, j)], OrdinalMap.delta(i, m - 1))
                        right = self.act_deg(self.faces[(t, i)], OrdinalMap.delta(j - 1, m - 1))
                        if left != right:
                            raise ValueError(
                                f"simplicial identity fails at {t!r}, faces ({i},{j})"
                            )

    def __repr__(self):
        counts = ",".join(str(len(self.dims.get(m, ()))) for m in range(self.max_dim + 1))
        return f"<{self.name}: nondeg counts ({counts})>"


# -- builders --------------------------------------------------------------


@lru_cache(maxsize=None)
def simplex(n: int) -> FiniteSimplicialSet:
    """The standard n-simplex: nondegenerate k-simplices are vertex subsets."""
    dims: dict[int, tuple] = {}
    faces: dict[tuple, Deg] = {}
    dim_of: dict = {}
    for k in range(n + 1):
        ids = tuple(itertools.combinations(range(n + 1), k + 1))
        dims[k] = ids
        for t in ids:
            dim_of[t] = k
            for i in range(k + 1):
                sub = t[:i] + t[i + 1 :]
                if sub:
                    faces[(t, i)] = Deg(sub, OrdinalMap.identity(k - 1))
    return FiniteSimplicialSet(f"simplex:{n}", dims, faces, dim_of, kind=("simplex", n))


def _subcomplex(amb: FiniteSimplicialSet, keep, name: str) -> FiniteSimplicialSet:
    dims = {m: tuple(t for t in ids if t in keep) for m, ids in amb.dims.items()}
    faces = {k: v for k, v in amb.faces.items() if k[0] in keep}
    dim_of = {t: d for t, d in amb.dim_of.items() if t in keep}
    return FiniteSimplicialSet(name, dims, faces, dim_of, kind=("sub", amb.kind, name))


@lru_cache(maxsize=None)
def boundary(n: int) -> FiniteSimplicialSet:
    """The boundary of the standard n-simplex."""
    if n < 1:
        raise ValueError("boundary needs n >= 1")
    amb = simplex(n)
    keep = {t for t in amb.dim_of if len(t) <= n}
    return _subcomplex(amb, keep, f"boundary:{n}")


@lru_cache(maxsize=None)
def horn(n: int, k: int) -> FiniteSimplicialSet:
    """The horn of the n-simplex missing the interior and the k-th facet."""
    if not 0 <= k <= n or n < 1:
        raise ValueError("invalid horn parameters")
    amb = simplex(n)
    missing_facet = tuple(v for v in range(n + 1) if v != k)
    keep = {t for t in amb.dim_of if len(t) <= n and t != missing_facet}
    return _subcomplex(amb, keep, f"horn:{n}:{k}")


@lru_cache(maxsize=None)
def circle() -> FiniteSimplicialSet:
    """The circle as the interval with both endpoints identified."""
    point = OrdinalMap.identity(0)
    dims = {0: ("v",), 1: ("e",)}
    faces = {("e", 0): Deg("v", point), ("e", 1): Deg("v", point)}
    dim_of = {"v": 0, "e": 1}
    return FiniteSimplicialSet("circle", dims, faces, dim_of, kind=("circle",))


def _joint_normalize(a: Deg, b: Deg) -> tuple[SimplexId, OrdinalMap]:
    """Normalize a pair of Deg pointers of equal dimension to a jointly
    nondegenerate product simplex id plus the common degeneracy word."""
    pairs = list(zip(a.word.images, b.word.images))
    image: list[tuple[int, int]] = []
    w = []
    for p in pairs:
        if not image or image[-1] != p:
            image.append(p)
        w.append(len(image) - 1)
    s = OrdinalMap(a.word.target, tuple(p[0] for p in image))
    u = OrdinalMap(b.word.target, tuple(p[1] for p in image))
    word = OrdinalMap(len(image) - 1, tuple(w))
    pid = ("P", a.target, s.images, b.target, u.images)
    return pid, word


def _surjection_pairs(m: int, p: int, q: int):
    """All jointly injective pairs of surjections ([m] -> [p], [m] -> [q])."""

    def walk(sa, sb):
        if len(sa) == m + 1:
            if sa[-1] == p and sb[-1] == q:
                yield tuple(sa), tuple(sb)
            return
        a, b = sa[-1], sb[-1]
        for da, db in ((1, 0), (0, 1), (1, 1)):
            if a + da <= p and b + db <= q:
                yield from walk(sa + [a + da], sb + [b + db])

    if m == 0:
        if p == 0 and q == 0:
            yield (0,), (0,)
        return
    yield from walk([0], [0])


def product(A: FiniteSimplicialSet, B: FiniteSimplicialSet, D: int) -> FiniteSimplicialSet:
    """The product A x B, truncated above dimension D.

    Nondegenerate m-simplices are pairs of simplices of A and B that are
    jointly nondegenerate; ids are ("P", a, s, b, u) with s, u the
    degeneracy words of the two components.
    """
    dims: dict[int, tuple] = {}
    faces: dict[tuple, Deg] = {}
    dim_of: dict = {}
    for m in range(D + 1):
        ids = []
        for p in range(min(m, A.max_dim) + 1):
            for q in range(min(m, B.max_dim) + 1):
                if p + q < m:
                    continue
                for a in A.simplices(p):
                    for b in B.simplices(q):
                        for s, u in _surjection_pairs(m, p, q):
                            ids.append(("P", a, s, b, u))
        dims[m] = tuple(ids)
        for t in ids:
            dim_of[t] = m
    for t in dim_of:
        _, a, s, b, u = t
        m = dim_of[t]
        for i in range(m + 1):
            if m == 0:
                continue
            delta = OrdinalMap.delta(i, m)
            fa = A.act(a, compose(OrdinalMap(A.dim_of[a], s), delta))
            fb = B.act(b, compose(OrdinalMap(B.dim_of[b], u), delta))
            pid, word = _joint_normalize(fa, fb)
            if pid not in dim_of:
                raise ValueError("product face escapes the truncation")
            faces[(t, i)] = Deg(pid, word)
    name = f"product({A.name},{B.name},{D})"
    return FiniteSimplicialSet(name, dims, faces, dim_of, kind=("product", A, B))


def product_simplex(P: FiniteSimplicialSet, a: Deg, b: Deg) -> Deg:
    """The simplex of the product P determined by component simplices a, b."""
    if P.kind[0] != "product":
        raise ValueError("not a product space")
    if a.dim != b.dim:
        raise ValueError("component dimensions differ")
    pid, word = _joint_normalize(a, b)
    if pid not in P.dim_of:
        raise ValueError("simplex lies above the product truncation")
    return Deg(pid, word)


def simplex_from_vertices(X: FiniteSimplicialSet, verts: tuple) -> Deg:
    """The simplex of a (product of) standard simplices with a given
    monotone vertex path.  Vertices of products are nested pairs."""
    kind = X.kind
    if kind[0] == "simplex":
        n = kind[1]
        return X.act(tuple(range(n + 1)), OrdinalMap(n, tuple(verts)))
    if kind[0] == "product":
        A, B = kind[1], kind[2]
        a = simplex_from_vertices(A, tuple(v[0] for v in verts))
        b = simplex_from_vertices(B, tuple(v[1] for v in verts))
        return product_simplex(X, a, b)
    raise ValueError(f"space {X.name} is not vertex-determined")


@lru_cache(maxsize=None)
def prism(n: int) -> FiniteSimplicialSet:
    """The prism (standard n-simplex) x (standard 1-simplex)."""
    return product(simplex(n), simplex(1), n + 1)


# -- simplicial maps -------------------------------------------------------


class SimplicialMap:
    """A simplicial map, stored on nondegenerate source simplices."""

    def __init__(self, source, target, mapping: dict, check=True):
        self.source = source
        self.target = target
        self.mapping = mapping
        if check:
            self.validate()

    def apply(self, s: Deg) -> Deg:
        img = self.mapping[s.target]
        return self.target.act_deg(img, s.word)

    def apply_id(self, t: SimplexId) -> Deg:
        return self.mapping[t]

    def validate(self):
        for t, img in self.mapping.items():
            if img.dim != self.source.dim_of[t]:
                raise ValueError(f"image of {t!r} has the wrong dimension")
        for m, ids in self.source.dims.items():
            if m < 1:
                continue
            for t in ids:
                img = self.mapping[t]
                for i in range(m + 1):
                    lhs = self.apply(self.source.faces[(t, i)])
                    rhs = self.target.act_deg(img, OrdinalMap.delta(i, m))
                    if lhs != rhs:
                        raise ValueError(
                            f"map is not simplicial at {t!r}, face {i}"
                        )

    def compose_ordinal(self, t: SimplexId, alpha: OrdinalMap) -> Deg:
        """The image of the (possibly degenerate) simplex alpha*(t)."""
        return self.apply(self.source.act(t, alpha))


def char_map(X: FiniteSimplicialSet, t: SimplexId) -> SimplicialMap:
    """The characteristic map of a nondegenerate simplex, from its standard simplex."""
    k = X.dim_of[t]
    src = simplex(k)
    mapping = {}
    for sub in src.dim_of:
        incl = OrdinalMap(k, sub)
        mapping[sub] = X.act(t, incl)
    return SimplicialMap(src, X, mapping)


def nerve_map(n: int, X: FiniteSimplicialSet, t: SimplexId, vertex_map) -> SimplicialMap:
    """The simplicial map prism(n) -> X through the simplex t, induced by a
    monotone map on prism vertices.

    ``vertex_map`` maps (i, eps) in [n] x [1] to a vertex of the standard
    simplex carrying t; the resulting map factors as prism -> simplex(k) -> X.
    """
    P = prism(n)
    k = X.dim_of[t]
    mapping = {}
    for pid in P.dim_of:
        _, a, s, b, u = pid
        verts = tuple(vertex_map[(a[si], b[ui])] for si, ui in zip(s, u))
        alpha = OrdinalMap(k, verts)
        mapping[pid] = X.act(t, alpha)
    return SimplicialMap(P, X, mapping)


def top_chain_simplex(n: int, r: int, chain) -> SimplicialMap:
    """The embedding of the chain's top simplex into simplex(n) x simplex(r)."""
    from .ordinals import chain_projections

    src = simplex(n + r)
    tgt = product(simplex(n), simplex(r), n + r)
    base, fiber = chain_projections(chain)
    mapping = {}
    for sub in src.dim_of:
        verts = tuple((base(v), fiber(v)) for v in sub)
        mapping[sub] = simplex_from_vertices(tgt, verts)
    return SimplicialMap(src, tgt, mapping)


def iota(r: int) -> SimplicialMap:
    """The inclusion of the r-simplex into the r-cube (simplex(1) to the r-th
    power) sending vertex k to (1 if k >= j else 0 for component j)."""
    if r < 1:
        raise ValueError("iota needs r >= 1")
    target = simplex(1)
    for _ in range(r - 1):
        target = product(target, simplex(1), r)

    def cube_vertex(k):
        comps = [1 if k >= j else 0 for j in range(1, r + 1)]
        v = comps[0]
        for c in comps[1:]:
            v = (v, c)
        return v

    src = simplex(r)
    mapping = {}
    for sub in src.dim_of:
        verts = tuple(cube_vertex(v) for v in sub)
        mapping[sub] = simplex_from_vertices(target, verts)
    return SimplicialMap(src, target, mapping)
