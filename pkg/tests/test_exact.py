import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bianchi_special.exact import (DimensionError, Matrix, NotIntegralError,
                                   SingularMatrixError, det, mat_inverse, mat_mul, reduce_mod)


def schoolbook(a, b):
    n, k, p = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(p)] for i in range(n)]


def leibniz_det(rows):
    # cofactor expansion, fine up to 5x5
    n = len(rows)
    if n == 1:
        return rows[0][0]
    return sum((-1) ** j * rows[0][j] * leibniz_det([r[:j] + r[j + 1:] for r in rows[1:]])
               for j in range(n))


def rand_matrix(rng, n, lo=-5, hi=5, frac=False):
    def entry():
        v = rng.randint(lo, hi)
        return Fraction(v, rng.randint(1, 4)) if frac else v
    return Matrix([[entry() for _ in range(n)] for _ in range(n)])


def test_identity_and_small_inverse():
    a = Matrix([[1, 2], [3, 4]])
    assert a @ Matrix.identity(2) == a
    # adjugate / det
    assert a.inverse() == Matrix([[-2, 1], [Fraction(3, 2), Fraction(-1, 2)]])
    assert a.det() == -2


def test_entries_normalize_to_int():
    a = Matrix([[Fraction(4, 2), Fraction(1, 3)]])
    assert type(a[0, 0]) is int and a[0, 0] == 2
    assert a[0, 1] == Fraction(1, 3)


def test_errors():
    with pytest.raises(SingularMatrixError):
        Matrix([[1, 2], [2, 4]]).inverse()
    with pytest.raises(DimensionError):
        Matrix([[1, 2]]) @ Matrix([[1, 2]])
    with pytest.raises(NotIntegralError):
        Matrix([[Fraction(1, 2)]]).reduce_mod(2)
    with pytest.raises(DimensionError):
        Matrix([[1, 2], [3]])


def test_reduce_mod_negative_entries():
    assert Matrix([[-1, -3], [4, 5]]).reduce_mod(2) == Matrix([[1, 1], [0, 1]])


def test_string_roundtrip():
    a = Matrix([[Fraction(-3, 2), 7], [0, Fraction(5, 9)]])
    assert a.to_strings() == [["-3/2", "7"], ["0", "5/9"]]
    assert Matrix.from_strings(a.to_strings()) == a


def test_product_matches_schoolbook():
    rng = random.Random(1)
    for _ in range(100):
        n = rng.randint(1, 7)
        a, b = rand_matrix(rng, n, frac=True), rand_matrix(rng, n, frac=True)
        assert (a @ b).tolist() == schoolbook(a.tolist(), b.tolist())
        assert mat_mul(a, b) == a @ b


def test_det_matches_cofactor_oracle():
    rng = random.Random(2)
    for _ in range(100):
        n = rng.randint(1, 5)
        a = rand_matrix(rng, n, frac=rng.random() < 0.5)
        assert a.det() == leibniz_det(a.tolist())


def test_inverse_and_det_laws():
    rng = random.Random(3)
    count = 0
    while count < 100:
        n = rng.randint(1, 7)
        a, b = rand_matrix(rng, n), rand_matrix(rng, n, frac=True)
        if a.det() == 0:
            continue
        count += 1
        inv = mat_inverse(a)
        assert a @ inv == Matrix.identity(n) == inv @ a
        assert det(a @ b) == det(a) * det(b)
        assert inv.det() == 1 / Fraction(a.det())


def test_associativity():
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(1, 7)
        a, b, c = (rand_matrix(rng, n, frac=True) for _ in range(3))
        assert (a @ b) @ c == a @ (b @ c)


small_ints = st.integers(-20, 20)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.tuples(*[st.lists(st.lists(small_ints, min_size=n, max_size=n),
                                   min_size=n, max_size=n)] * 2)),
       st.integers(2, 9))
def test_reduce_mod_is_ring_homomorphism(pair, n):
    a, b = Matrix(pair[0]), Matrix(pair[1])
    assert reduce_mod(a @ b, n) == reduce_mod(reduce_mod(a, n) @ reduce_mod(b, n), n)
    assert reduce_mod(a + b, n) == reduce_mod(reduce_mod(a, n) + reduce_mod(b, n), n)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(small_ints, min_size=4, max_size=4), min_size=4, max_size=4))
def test_transpose_det(rows):
    a = Matrix(rows)
    assert a.T.det() == a.det()
