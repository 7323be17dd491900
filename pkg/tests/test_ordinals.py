import math

import pytest

from dpderham.ordinals import (
    MaximalChain,
    OrdinalMap,
    chain_projections,
    chain_sections,
    compose,
    enumerate_chains,
    epi_mono_factor,
)


def test_identity_and_predicates():
    ident = OrdinalMap.identity(3)
    assert ident.is_identity() and ident.is_injective() and ident.is_surjective()
    assert ident(2) == 2


def test_monotonicity_enforced():
    with pytest.raises(ValueError):
        OrdinalMap(2, (1, 0))
    with pytest.raises(ValueError):
        OrdinalMap(2, (0, 3))


def test_delta_sigma_relations():
    # delta_i skips i, sigma_i repeats i
    assert OrdinalMap.delta(1, 2).images == (0, 2)
    assert OrdinalMap.sigma(0, 1).images == (0, 0, 1)
    # simplicial identity: sigma_i . delta_i = id
    for n in range(1, 4):
        for i in range(n):
            comp = compose(OrdinalMap.sigma(i, n - 1), OrdinalMap.delta(i, n))
            assert comp.is_identity()


def test_compose_associative():
    a = OrdinalMap(3, (0, 2, 2, 3))
    b = OrdinalMap(3, (1, 1, 3))
    c = OrdinalMap(2, (0, 0, 1, 2))
    assert compose(compose(a, b), c).images == compose(a, compose(b, c)).images


def test_epi_mono_factorization():
    alpha = OrdinalMap(4, (1, 1, 3, 3, 4))
    epi, mono = epi_mono_factor(alpha)
    assert epi.is_surjective() and mono.is_injective()
    assert compose(mono, epi).images == alpha.images


def test_chain_enumeration_counts():
    for n in range(5):
        for r in range(5):
            chains = enumerate_chains(n, r)
            assert len(chains) == math.comb(n + r, r)
            assert len(set(c.points for c in chains)) == len(chains)


def test_chain_order_is_lexicographic_in_steps():
    steps = [c.steps for c in enumerate_chains(1, 1)]
    assert steps == ["SF", "FS"]


def test_chain_round_trip():
    for chain in enumerate_chains(2, 2):
        again = MaximalChain.from_steps(2, 2, chain.steps)
        assert again == chain


def test_chain_projections_monotone_jointly_injective():
    for chain in enumerate_chains(2, 2):
        base, fiber = chain_projections(chain)
        pairs = list(zip(base.images, fiber.images))
        assert pairs == sorted(set(pairs))


def test_chain_sections_are_sections():
    for n in range(3):
        for r in range(1, 3):
            for chain in enumerate_chains(n, r):
                base, fiber = chain_projections(chain)
                b, f, u = chain_sections(chain)
                for i in range(n + 1):
                    assert base(b(i)) == i
                for i in range(r + 1):
                    assert fiber(f(i)) >= i
