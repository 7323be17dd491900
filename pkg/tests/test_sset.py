import math

import pytest

from dpderham.ordinals import OrdinalMap, enumerate_chains
from dpderham.sset import (
    Deg,
    boundary,
    char_map,
    circle,
    horn,
    iota,
    nerve_map,
    prism,
    product,
    product_simplex,
    simplex,
    simplex_from_vertices,
    top_chain_simplex,
)


def test_simplex_counts():
    for n in range(4):
        X = simplex(n)
        X.validate()
        for m in range(n + 1):
            assert len(X.simplices(m)) == math.comb(n + 1, m + 1)


def test_boundary_and_horn_drop_cells():
    B = boundary(2)
    B.validate()
    assert B.max_dim == 1
    assert len(B.simplices(1)) == 3
    H = horn(2, 0)
    H.validate()
    assert len(H.simplices(1)) == 2


def test_circle_shape():
    S = circle()
    S.validate()
    assert len(S.simplices(0)) == 1
    assert len(S.simplices(1)) == 1
    # both faces of the edge hit the unique vertex
    for i in (0, 1):
        assert S.face("e", i).target == "v"


def test_act_epi_mono_consistency():
    X = simplex(2)
    top = (0, 1, 2)
    # degenerate then face back down
    s = X.act(top, OrdinalMap.sigma(1, 2))
    assert not s.is_nondegenerate()
    t = X.act_deg(s, OrdinalMap.delta(2, 3))
    assert t.dim == 2


def test_product_top_cells_are_chains():
    for n in range(3):
        for r in range(3):
            P = product(simplex(n), simplex(r), n + r)
            P.validate()
            tops = P.simplices(n + r)
            assert len(tops) == math.comb(n + r, r)


def test_product_simplex_and_projections_roundtrip():
    P = product(simplex(1), simplex(1), 2)
    a = Deg((0, 1), OrdinalMap.sigma(0, 1))
    b = Deg((0, 1), OrdinalMap.sigma(1, 1))
    pair = product_simplex(P, a, b)
    assert pair.dim == 2


def test_simplex_from_vertices():
    X = simplex(2)
    e = simplex_from_vertices(X, (0, 2))
    assert e.target == (0, 2)
    degenerate = simplex_from_vertices(X, (1, 1))
    assert not degenerate.is_nondegenerate()


def test_char_map_validates():
    X = boundary(2)
    f = char_map(X, (0, 1))
    f.validate()
    assert f.source.max_dim == 1


def test_nerve_map_of_monotone_vertex_map():
    X = simplex(1)
    vm = {(0, 0): 0, (1, 0): 0, (0, 1): 1, (1, 1): 1}
    f = nerve_map(1, X, (0, 1), vm)
    f.validate()


def test_top_chain_simplex_maps_validate():
    for chain in enumerate_chains(1, 1):
        f = top_chain_simplex(1, 1, chain)
        f.validate()


def test_iota_validates():
    for r in (1, 2):
        iota(r).validate()


def test_prism_space():
    P = prism(1)
    P.validate()
    assert P.max_dim == 2
