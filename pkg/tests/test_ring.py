import random

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from bianchi_special.exact import Matrix
from bianchi_special.quadform import build_Q_m
from bianchi_special.ring import (Mat2O, MixedRingError, QuadInt, eval_word, free_reduce,
                                  generator, in_delta_m, invert_word, is_congruence_level,
                                  level2_params, phi_m, random_word)

M_VALUES = [1, 2, 3, 5, 6, 7, 11, 15, 19, 23]


def test_omega_squared():
    for m in (1, 2, 5, 6):
        w = QuadInt.omega(m)
        assert w * w == QuadInt.of(m, -m)
    for m in (3, 7, 11, 15):
        w = QuadInt.omega(m)
        assert w * w == w - QuadInt.of(m, (m + 1) // 4)


def test_norm_against_complex_embedding():
    rng = random.Random(0)
    for m in M_VALUES:
        w = complex(0, m ** 0.5) if m % 4 != 3 else complex(0.5, m ** 0.5 / 2)
        for _ in range(50):
            x = QuadInt(rng.randint(-9, 9), rng.randint(-9, 9), m)
            assert x.norm() == round(abs(x.a0 + x.a1 * w) ** 2)


def test_mixed_rings_rejected():
    with pytest.raises(MixedRingError):
        QuadInt(1, 1, 1) + QuadInt(1, 1, 2)


def test_generator_determinants_and_inverses():
    for m in M_VALUES:
        for letter in "TUS":
            g = generator(m, letter)
            assert g.det() == QuadInt.of(m, 1)
            assert g @ generator(m, letter.lower()) == Mat2O.identity(m)


def test_word_helpers():
    assert free_reduce("TtUSsu") == ""
    assert invert_word("TUs") == "Sut"
    for m in (1, 3):
        assert eval_word(m, "TUS") @ eval_word(m, invert_word("TUS")) == Mat2O.identity(m)


# -- phi_m ----------------------------------------------------------------------

def _sym_phi(m):
    """The raw formula, fed symbolic coordinates.

    The test checks two polynomial identities over all of M_2(O_m):
    multiplicativity and phi^T Q phi = N(det) Q.
    """
    from bianchi_special.ring import _phi_raw_12, _phi_raw_3

    class Coords:
        def __init__(self, c):
            self.c = c

        def coords(self):
            return self.c

    return _phi_raw_3 if m % 4 == 3 else _phi_raw_12, Coords


@pytest.mark.parametrize("m", [1, 2, 3, 7])
def test_phi_polynomial_identities(m):
    raw, Coords = _sym_phi(m)
    w = sp.Symbol("w")
    law = w ** 2 + m if m % 4 != 3 else w ** 2 - w + (m + 1) // 4
    A = sp.symbols("a0 a1 b0 b1 c0 c1 d0 d1")
    B = sp.symbols("e0 e1 f0 f1 g0 g1 h0 h1")

    def mat(v):
        return sp.Matrix([[v[0] + v[1] * w, v[2] + v[3] * w], [v[4] + v[5] * w, v[6] + v[7] * w]])

    def coords(expr):
        r = sp.Poly(sp.rem(sp.expand(expr), law, w), w)
        return r.coeff_monomial(1), r.coeff_monomial(w)

    def pairs(v):
        return tuple(zip(v[::2], v[1::2]))

    pa = sp.Matrix(raw(m, Coords(pairs(A))))
    pb = sp.Matrix(raw(m, Coords(pairs(B))))
    pab = sp.Matrix(raw(m, Coords(tuple(coords(e) for e in mat(A) * mat(B)))))
    assert sp.expand(pab - pa * pb) == sp.zeros(4)

    q = sp.Matrix(build_Q_m(m).matrix.tolist())
    d0, d1 = coords(mat(A).det())
    nd = d0 ** 2 + m * d1 ** 2 if m % 4 != 3 else d0 ** 2 + d0 * d1 + (m + 1) // 4 * d1 ** 2
    assert sp.expand(pa.T * q * pa - nd * q) == sp.zeros(4)


def test_phi_identity_and_minus_identity():
    for m in M_VALUES:
        ident = Mat2O.identity(m)
        assert phi_m(ident) == Matrix.identity(4)
        assert phi_m(-ident) == Matrix.identity(4)


def test_phi_rejects_non_unit_det():
    with pytest.raises(ValueError):
        phi_m(Mat2O.from_coords(1, ((2, 0), (0, 0), (0, 0), (1, 0))))


@pytest.mark.parametrize("m", M_VALUES)
def test_phi_homomorphism_and_form_on_samples(m):
    rng = random.Random(m)
    q = build_Q_m(m).matrix
    for _ in range(200):
        x, y = eval_word(m, random_word(rng, 8)), eval_word(m, random_word(rng, 8))
        px, py = phi_m(x), phi_m(y)
        assert phi_m(x @ y) == px @ py
        assert px.T @ q @ px == q
        assert px.det() == 1
        assert phi_m(x.inverse()) == px.inverse()


@pytest.mark.parametrize("m", [1, 2, 3, 7])
def test_phi_kernel_is_plus_minus_identity(m):
    rng = random.Random(100 + m)
    for _ in range(200):
        x = eval_word(m, random_word(rng, 10))
        if phi_m(x).is_identity():
            assert x.psl_equal(Mat2O.identity(m))


# -- congruence levels ----------------------------------------------------------

def test_level_examples():
    t2 = Mat2O.from_coords(3, ((1, 0), (2, 0), (0, 0), (1, 0)))
    t1 = Mat2O.from_coords(3, ((1, 0), (1, 0), (0, 0), (1, 0)))
    assert is_congruence_level(t2, 2) and not is_congruence_level(t1, 2)
    assert in_delta_m(t2) and not in_delta_m(t1)
    # level 2 but b1 != c1 mod 2
    t2w = Mat2O.from_coords(3, ((1, 0), (0, 2), (0, 0), (1, 0)))
    assert is_congruence_level(t2w, 2) and not in_delta_m(t2w)
    assert in_delta_m(Mat2O.from_coords(1, ((1, 0), (0, 2), (0, 0), (1, 0))))


@pytest.mark.parametrize("m", M_VALUES)
def test_level_sandwich_and_parity(m):
    """Level 4 inside Delta_m inside level 2, and a1 = d1 mod 2 at level 2."""
    rng = random.Random(7 * m)
    seen_level2 = 0
    for _ in range(400):
        x = eval_word(m, random_word(rng, 10))
        if is_congruence_level(x, 4):
            assert in_delta_m(x)
        if in_delta_m(x):
            assert is_congruence_level(x, 2)
        if is_congruence_level(x, 2):
            seen_level2 += 1
            p = level2_params(x)
            assert (p["a1"] - p["d1"]) % 2 == 0
            assert in_delta_m(x) == in_delta_m(-x)
    for w in ("TT", "UU", "STTs", "SUUs", "TTUU"):
        x = eval_word(m, w)
        assert is_congruence_level(x, 2)
        p = level2_params(x)
        assert (p["a1"] - p["d1"]) % 2 == 0


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(M_VALUES), st.text("TtUuSs", max_size=10), st.text("TtUuSs", max_size=10))
def test_delta_is_closed_under_products(m, u, v):
    x, y = eval_word(m, u), eval_word(m, v)
    if in_delta_m(x) and in_delta_m(y):
        assert in_delta_m(x @ y)
        assert in_delta_m(x.inverse())
