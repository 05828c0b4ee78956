from fractions import Fraction

import pytest

from toughham.graph import Graph, OrientedCycle, bits, mask_of
from toughham.certificates import (
    HamiltonianCycle, ToughnessWitness, IndependentSetWitness,
)
from toughham.oracles import (
    toughness, is_t_tough, is_2k2_free, is_2k2_free_obs1,
    independence_number, independence_number_enum,
    hamiltonian_cycle_bruteforce, minimum_component_two_factor,
    verify_certificate, check_certificate, co_absorbable_vertices_bruteforce,
    all_graphs, SizeLimit, Limits,
)
from conftest import (
    cycle_graph, complete_graph, path_graph, star_graph,
    complete_bipartite, petersen_graph, random_graph,
)
from toughham.generators import SplitMix64, random_2k2_free


# ---------------------------------------------------------------- toughness

def test_toughness_complete_is_infinite():
    rep = toughness(complete_graph(4))
    assert rep.infinite and rep.witness is None
    assert str(rep) == "inf"


def test_toughness_star():
    rep = toughness(star_graph(3))
    assert rep.value == Fraction(1, 3)
    assert rep.witness == 1 << 0


def test_toughness_c6():
    rep = toughness(cycle_graph(6))
    assert rep.value == 1
    cut = rep.witness
    assert bin(cut).count("1") == 2


def test_toughness_witness_recount():
    rng = SplitMix64(7)
    for _ in range(50):
        g = random_graph(4 + rng.below(6), rng)
        rep = toughness(g)
        if rep.infinite:
            continue
        omega = len(g.components(g.full_mask & ~rep.witness))
        assert Fraction(bin(rep.witness).count("1"), omega) == rep.value


def test_toughness_size_limit():
    g = Graph(30, tuple(0 for _ in range(30)))
    with pytest.raises(SizeLimit):
        toughness(g)
    # but a loosened limit object admits it
    toughness(cycle_graph(6), Limits(toughness=10))


def test_is_t_tough():
    c6 = cycle_graph(6)
    ok, _ = is_t_tough(c6, Fraction(1))
    assert ok
    ok, s = is_t_tough(c6, Fraction(3, 2))
    assert not ok
    assert bin(s).count("1") < Fraction(3, 2) * len(c6.components(c6.full_mask & ~s))
    ok, _ = is_t_tough(complete_graph(5), Fraction(10))
    assert ok


# ---------------------------------------------------------------- 2K2 tests

def test_2k2_c4_free():
    assert is_2k2_free(cycle_graph(4))[0]


def test_2k2_p5_witness():
    ok, w = is_2k2_free(path_graph(5))
    assert not ok and set(w) == {0, 1, 3, 4}


def test_2k2_c6_witness():
    ok, w = is_2k2_free(cycle_graph(6))
    assert not ok and set(w) == {0, 1, 3, 4}


def test_2k2_algorithms_agree_1000():
    """The pair-scan and the non-neighborhood-independence recognition must
    return the same verdict on 1000 random graphs."""
    rng = SplitMix64(1234)
    checked = 0
    for p in (0.2, 0.5, 0.8):
        for _ in range(334):
            g = random_graph(4 + rng.below(9), rng, p)
            a, wa = is_2k2_free(g)
            b, wb = is_2k2_free_obs1(g)
            assert a == b, (g.adj, wa, wb)
            if not a:
                x, y, c, d = wb
                # the witness really is an induced disjoint edge pair
                assert g.has_edge(x, y) and g.has_edge(c, d)
                assert not any(g.has_edge(u, v)
                               for u in (x, y) for v in (c, d))
            checked += 1
    assert checked >= 1000


# --------------------------------------------------------------- alpha etc.

def test_alpha_c5():
    assert independence_number(cycle_graph(5))[0] == 2


def test_alpha_k33():
    alpha, w = independence_number(complete_bipartite(3, 3))
    assert alpha == 3
    assert w in (0b000111, 0b111000)


def test_alpha_petersen_cross_checked():
    g = petersen_graph()
    assert independence_number(g)[0] == 4
    assert independence_number_enum(g) == 4


def test_hamiltonian_bruteforce():
    c6 = cycle_graph(6)
    cyc = hamiltonian_cycle_bruteforce(c6)
    assert cyc is not None and cyc.vertex_mask == c6.full_mask
    assert hamiltonian_cycle_bruteforce(star_graph(3)) is None
    assert hamiltonian_cycle_bruteforce(petersen_graph()) is None


def test_minimum_component_two_factor():
    g = cycle_graph(5)
    f, omega = minimum_component_two_factor(g)
    assert omega == 1 and f.check() is None
    tri2 = Graph.from_edge_list(6, [(0, 1), (1, 2), (2, 0),
                                    (3, 4), (4, 5), (5, 3)])
    f, omega = minimum_component_two_factor(tri2)
    assert omega == 2
    assert minimum_component_two_factor(star_graph(3)) is None


# ------------------------------------------------------------- certificates

def test_verify_hamiltonian_cycle():
    c6 = cycle_graph(6)
    cert = HamiltonianCycle(OrientedCycle.checked(c6, range(6)))
    assert verify_certificate(c6, cert)


def test_verify_toughness_witness():
    cert = ToughnessWitness(cut=(1 << 0) | (1 << 3))
    assert verify_certificate(cycle_graph(6), cert)


def test_verify_rejects_dependent_set():
    cert = IndependentSetWitness(vertices=0b11)
    err = check_certificate(complete_graph(4), cert)
    assert err is not None and "independent" in err


def test_independent_witness_conversion():
    # alpha > n/3 always converts to a sub-2 toughness ratio
    g = cycle_graph(6)
    cert = IndependentSetWitness(vertices=0b010101)
    assert verify_certificate(g, cert)
    tw = cert.to_toughness_witness(g)
    assert tw.ratio(g) < 2


# -------------------------------------------------- degree-bound properties

def test_low_degree_set_independent_on_random_2k2_free():
    """In a 2K2-free graph the vertices of degree at most (n - alpha)/2 are
    pairwise nonadjacent."""
    rng = SplitMix64(55)
    done = 0
    while done < 120:
        g = random_2k2_free(5 + rng.below(10), 0.3 + rng.below(50) / 100,
                            rng.u64())
        alpha, _ = independence_number(g)
        low = [v for v in range(g.n) if 2 * g.degree(v) <= g.n - alpha]
        for i, u in enumerate(low):
            for v in low[i + 1:]:
                assert not g.has_edge(u, v), (g.adj, u, v)
        done += 1


def test_co_absorbable_degree_bound_exhaustive_n6():
    """Vertices whose removal admits a smaller 2-factor have degree at most
    alpha - 1 (checked against the exhaustive minimum factor)."""
    for g in all_graphs(6):
        res = minimum_component_two_factor(g)
        if res is None:
            continue
        f, omega = res
        alpha, _ = independence_number(g)
        for x in co_absorbable_vertices_bruteforce(g, f):
            assert g.degree(x) <= alpha - 1, (g.adj, x)
