import itertools
import random

import pytest

from bianchi_special.finite import (THEOREM_INDEX, delta_image, enumerate_psl, fig8_generators,
                                    fig8_index, fig8_report, index_formula, level_image,
                                    splitting_type, subgroup_closure)
from bianchi_special.quadform import is_squarefree
from bianchi_special.ring import (Mat2O, QuadInt, eval_word, in_delta_m, is_congruence_level,
                                  random_word)

SQUAREFREE_50 = [m for m in range(1, 51) if is_squarefree(m)]


def brute_sl_psl(m, q):
    """Count SL(2, O/q) and PSL(2, O/q) with plain QuadInt arithmetic."""
    elems = [QuadInt(a, b, m) for a in range(q) for b in range(q)]

    def red(x):
        return (x.a0 % q, x.a1 % q)

    sl = set()
    one = (1 % q, 0)
    for a, b, c, d in itertools.product(elems, repeat=4):
        if red(a * d - b * c) == one:
            sl.add((red(a), red(b), red(c), red(d)))

    def negate(e):
        return tuple(((-x) % q, (-y) % q) for x, y in e)

    assert {negate(e) for e in sl} == sl
    return len(sl), len({min(e, negate(e)) for e in sl})


def test_level2_examples():
    assert enumerate_psl(1, 1).order == 48
    assert enumerate_psl(3, 1).order == 60
    assert enumerate_psl(7, 1).order == 36


def test_level2_orders_all_squarefree_upto_50():
    expected = {"ramified": 48, "inert": 60, "split": 36}
    for m in SQUAREFREE_50:
        kind = splitting_type(m)
        assert enumerate_psl(m, 1).order == expected[kind] == index_formula(m, 2)


def test_splitting_trichotomy():
    for m in SQUAREFREE_50:
        if m % 4 in (1, 2):
            assert splitting_type(m) == "ramified"
        else:
            assert splitting_type(m) == ("inert" if m % 8 == 3 else "split")


@pytest.mark.parametrize("m", [1, 3, 7])
def test_orders_against_brute_force(m):
    assert brute_sl_psl(m, 2)[1] == enumerate_psl(m, 1).order


@pytest.mark.parametrize("m", [1, 2, 3, 5, 7])
def test_level4_formula_matches_enumeration(m):
    assert enumerate_psl(m, 2).order == index_formula(m, 4)


def test_level4_index_m3_counts_psl_not_sl():
    sl, psl = brute_sl_psl(3, 4)
    assert sl == 3840
    assert psl == enumerate_psl(3, 2).order == index_formula(3, 4) == 1920


def test_index_formula_small_cases():
    assert index_formula(5, 2) == 48
    assert index_formula(1, "P2") == 6
    assert index_formula(7, "P2") == 6
    with pytest.raises(ValueError):
        index_formula(3, "P2")
    with pytest.raises(ValueError):
        index_formula(1, 3)


def test_closure_basics():
    G = enumerate_psl(3, 1)
    assert subgroup_closure(G, []).order == 1
    assert subgroup_closure(G, G.elements).order == G.order
    gens = [G.reduce(eval_word(3, w)) for w in ("T", "U", "S")]
    assert subgroup_closure(G, gens).order == G.order


def test_closure_idempotent_and_monotone():
    rng = random.Random(5)
    G = enumerate_psl(7, 2)
    for _ in range(10):
        gens = [G.reduce(eval_word(7, random_word(rng, 6))) for _ in range(rng.randint(1, 3))]
        H = subgroup_closure(G, gens)
        assert subgroup_closure(G, H.elements).elements == H.elements
        extra = G.reduce(eval_word(7, random_word(rng, 6)))
        assert H.elements <= subgroup_closure(G, gens + [extra]).elements
        assert H.is_closed()


@pytest.mark.parametrize("m", [1, 3, 7])
def test_reduction_is_homomorphism_and_detects_level(m):
    rng = random.Random(m)
    for k, level in ((1, 2), (2, 4)):
        G = enumerate_psl(m, k)
        for _ in range(100):
            x, y = eval_word(m, random_word(rng, 10)), eval_word(m, random_word(rng, 10))
            assert G.reduce(x @ y) == G.mul(G.reduce(x), G.reduce(y))
            assert G.reduce(x.inverse()) == G.inv(G.reduce(x))
            assert (G.reduce(x) == G.identity) == is_congruence_level(x, level)
        assert G.reduce(eval_word(m, "TT" * level)) in G


@pytest.mark.parametrize("m", [1, 2, 3, 5, 6, 7, 11, 15, 19, 23])
def test_delta_image_index_and_closure(m):
    G = enumerate_psl(m, 2)
    D = delta_image(m)
    assert D.is_closed()
    assert G.order // D.order == THEOREM_INDEX[splitting_type(m)]
    assert G.order % D.order == 0


@pytest.mark.parametrize("m", [1, 3, 7])
def test_delta_image_agrees_with_membership(m):
    rng = random.Random(10 + m)
    G, D = enumerate_psl(m, 2), delta_image(m)
    for _ in range(200):
        x = eval_word(m, random_word(rng, 10))
        assert (G.reduce(x) in D) == in_delta_m(x)


def test_level_image_orders():
    for m in (1, 3, 7):
        G = enumerate_psl(m, 2)
        L2 = level_image(m, 2)
        assert G.order // L2.order == enumerate_psl(m, 1).order
        assert level_image(m, 4).order == 1


def test_fig8():
    for g in fig8_generators():
        assert g.det() == QuadInt.of(3, 1)
    rep = fig8_report()
    assert rep["index"] == fig8_index() == 20
    assert rep["psl_order_mod4"] == 1920
    assert rep["fig8_image_index_in_psl_mod4"] * rep["fig8_image_order"] == 1920
