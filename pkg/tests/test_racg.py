import random

import pytest
from hypothesis import given, settings, strategies as st

from bianchi_special.exact import Matrix
from bianchi_special.racg import (RacgGraph, free_retraction_witness, insert_relation,
                                  random_graph, retract, retract_eval, tits_eval,
                                  tits_generators)
from bianchi_special.ring import Mat2O, in_delta_m

SQUARE = RacgGraph.build("abcd", [(0, 1), (1, 2), (2, 3), (3, 0)])


def random_word(rng, n, max_len=12):
    return [rng.randrange(n) for _ in range(rng.randint(0, max_len))]


def test_tits_examples():
    g = RacgGraph.build("abc", [(0, 1)])
    assert tits_eval(g, []) == Matrix.identity(3)
    assert tits_eval(g, [2, 2]).is_identity()
    assert tits_eval(g, [0, 1, 0, 1]).is_identity()
    # non-adjacent pair generates an infinite dihedral group
    assert not tits_eval(g, [0, 2, 0, 2]).is_identity()
    with pytest.raises(IndexError):
        tits_eval(g, [3])


def test_tits_generator_relations():
    rng = random.Random(0)
    for _ in range(5):
        g = random_graph(rng, rng.randint(3, 7))
        gens = tits_generators(g)
        n = len(g)
        for i in range(n):
            assert (gens[i] @ gens[i]).is_identity()
            for j in range(n):
                if g.adjacent(i, j):
                    prod = gens[i] @ gens[j]
                    assert (prod @ prod).is_identity()
                elif i != j:
                    # B(e_i, e_j) = -1: r_i r_j has infinite order
                    prod = gens[i] @ gens[j]
                    assert not (prod @ prod @ prod).is_identity()


def test_word_times_reverse_is_identity():
    rng = random.Random(1)
    for _ in range(5):
        g = random_graph(rng, rng.randint(3, 7))
        for _ in range(50):
            w = random_word(rng, len(g))
            assert tits_eval(g, w + w[::-1]).is_identity()


def test_retract_examples():
    w = SQUARE.parse_word("acbd")
    assert retract(SQUARE, [0, 1, 2, 3], w) == w
    assert retract(SQUARE, [0, 2], SQUARE.parse_word("bdbd")) == []
    g = RacgGraph.build("abc", [(0, 1)])
    assert g.format_word(retract(g, [0, 1], g.parse_word("acb"))) == "ab"


def test_retraction_homomorphism_on_random_graphs():
    rng = random.Random(2)
    graphs = 0
    for _ in range(5):
        g = random_graph(rng, rng.randint(4, 7))
        a_set = [v for v in range(len(g)) if rng.random() < 0.6] or [0]
        graphs += 1
        for _ in range(200):
            u, v = random_word(rng, len(g)), random_word(rng, len(g))
            assert retract_eval(g, a_set, u + v) == \
                retract_eval(g, a_set, u) @ retract_eval(g, a_set, v)
    assert graphs == 5


def test_retraction_is_identity_on_gamma_a():
    rng = random.Random(3)
    g = random_graph(rng, 6)
    a_set = [0, 2, 3]
    sub, relabel = g.induced(a_set)
    for _ in range(50):
        w = [rng.choice(a_set) for _ in range(rng.randint(0, 10))]
        assert retract_eval(g, a_set, w) == tits_eval(sub, [relabel[x] for x in w])


def test_retraction_well_defined_under_relations():
    rng = random.Random(4)
    for _ in range(5):
        g = random_graph(rng, rng.randint(4, 7))
        a_set = [v for v in range(len(g)) if rng.random() < 0.5] or [1]
        for _ in range(100):
            u = random_word(rng, len(g))
            v = u
            for _ in range(rng.randint(1, 4)):
                v = insert_relation(g, v, rng)
            assert tits_eval(g, u) == tits_eval(g, v)
            assert retract_eval(g, a_set, u) == retract_eval(g, a_set, v)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=15), st.sets(st.integers(0, 3)))
def test_retract_idempotent(word, a_set):
    once = retract(SQUARE, a_set, word)
    assert retract(SQUARE, a_set, once) == once


def test_graph_json_roundtrip_and_validation():
    back = RacgGraph.from_json(SQUARE.to_json())
    assert back == SQUARE
    with pytest.raises(ValueError):
        RacgGraph.build("ab", [(0, 2)])
    with pytest.raises(ValueError):
        RacgGraph.build("ab", [(1, 1)])
    with pytest.raises(ValueError):
        RacgGraph.build("aa", [])


def test_free_generator_membership():
    assert in_delta_m(Mat2O.from_coords(3, ((1, 0), (2, 0), (0, 0), (1, 0))))
    assert in_delta_m(Mat2O.from_coords(3, ((1, 0), (0, 0), (2, 0), (1, 0))))
    assert not in_delta_m(Mat2O.from_coords(3, ((1, 0), (1, 0), (0, 0), (1, 0))))


@pytest.mark.parametrize("m", [1, 2, 3, 7])
def test_free_retraction_witness(m):
    cert = free_retraction_witness(m, max_len=10)
    assert cert.passed
    assert cert.summary["mismatches"] == []
    assert all(c["in_delta"] for c in cert.checks)
    assert cert.summary["elements_enumerated"] > 500
    assert 0 < cert.summary["level2_elements"] < cert.summary["elements_enumerated"]


def test_free_retraction_rejects_non_squarefree():
    with pytest.raises(ValueError):
        free_retraction_witness(4)
