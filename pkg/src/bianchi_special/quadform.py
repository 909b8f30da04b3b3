"""Quadratic forms and the rational conjugating matrices between them.

Builds the Bianchi forms ``Q_m``, the standard form ``F_n``, the padded form
``P_m = Q_m + <2m, 2m, 2m>`` (stored as the matrix of ``P_m / 2``) and the
7x7 matrices ``A_m`` with ``A_m^t S_F A_m = S_{P_m}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator

from .exact import DimensionError, Matrix

__all__ = [
    "SymmetricForm",
    "FourSquare",
    "is_squarefree",
    "require_squarefree",
    "four_square",
    "four_squares_all",
    "build_Q_m",
    "build_F",
    "build_P_m",
    "build_A_m",
    "check_equivalence",
]


@dataclass(frozen=True)
class SymmetricForm:
    matrix: Matrix
    label: str = ""

    def __post_init__(self):
        if not self.matrix.is_symmetric():
            raise ValueError(f"form {self.label!r}: matrix is not symmetric")

    @property
    def dim(self) -> int:
        return self.matrix.nrows

    def __call__(self, v) -> Fraction | int:
        """Evaluate ``v^t S v``."""
        col = Matrix([[x] for x in v])
        return (col.T @ self.matrix @ col)[0, 0]

    def signature(self) -> tuple[int, int]:
        """(positive, negative) inertia by exact symmetric elimination."""
        a = [[Fraction(x) for x in row] for row in self.matrix.rows]
        n = self.dim
        pos = neg = 0
        for k in range(n):
            if a[k][k] == 0:
                # bring a nonzero diagonal entry to position k, or make one
                j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
                if j is not None:
                    a[k], a[j] = a[j], a[k]
                    for row in a:
                        row[k], row[j] = row[j], row[k]
                else:
                    j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                    if j is None:
                        continue
                    # x_k -> x_k + x_j makes the (k,k) entry 2 a_kj
                    for i in range(n):
                        a[k][i] += a[j][i]
                    for i in range(n):
                        a[i][k] += a[i][j]
            p = a[k][k]
            if p > 0:
                pos += 1
            else:
                neg += 1
            for i in range(k + 1, n):
                f = a[i][k] / p
                if f:
                    for j in range(k, n):
                        a[i][j] -= f * a[k][j]
            for i in range(k + 1, n):
                a[k][i] = Fraction(0)
        return pos, neg


@dataclass(frozen=True)
class FourSquare:
    w: int
    x: int
    y: int
    z: int

    @property
    def total(self) -> int:
        return self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2

    def as_list(self) -> list[int]:
        return [self.w, self.x, self.y, self.z]


def is_squarefree(m: int) -> bool:
    if m < 1:
        return False
    p = 2
    while p * p <= m:
        if m % (p * p) == 0:
            return False
        p += 1
    return True


def require_squarefree(m: int) -> None:
    if not is_squarefree(m):
        raise ValueError(f"m={m} is not a square-free positive integer")


def four_square(m: int) -> FourSquare:
    """Lexicographically smallest ``(w, x, y, z)`` with ``w >= x >= y >= z >= 0``."""
    if m < 1:
        raise ValueError("m must be positive")
    w = isqrt(m - 1) // 2 if m > 1 else 0
    while 4 * w * w < m:
        w += 1
    for w in range(w, isqrt(m) + 1):
        r1 = m - w * w
        for x in range(0, min(w, isqrt(r1)) + 1):
            r2 = r1 - x * x
            for y in range(0, min(x, isqrt(r2)) + 1):
                r3 = r2 - y * y
                z = isqrt(r3)
                if z * z == r3 and z <= y:
                    return FourSquare(w, x, y, z)
    raise AssertionError(f"no four-square decomposition found for {m}")


def four_squares_all(m: int) -> Iterator[FourSquare]:
    """Every signed, ordered decomposition ``m = w^2 + x^2 + y^2 + z^2``."""
    r = isqrt(m)
    for w in range(-r, r + 1):
        for x in range(-r, r + 1):
            for y in range(-r, r + 1):
                rest = m - w * w - x * x - y * y
                if rest < 0:
                    continue
                z = isqrt(rest)
                if z * z == rest:
                    yield FourSquare(w, x, y, z)
                    if z:
                        yield FourSquare(w, x, y, -z)


def build_Q_m(m: int) -> SymmetricForm:
    """Gram matrix of ``Q_m`` (so ``Q_m(v) = v^t S v``)."""
    require_squarefree(m)
    if m % 4 == 3:
        rows = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 2, 1], [0, 0, 1, Fraction(m + 1, 2)]]
    else:
        rows = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2 * m]]
    return SymmetricForm(Matrix(rows), f"Q_{m}")


def build_F(n: int) -> SymmetricForm:
    if not 2 <= n <= 7:
        raise ValueError(f"F_n is only used for 2 <= n <= 7, got n={n}")
    return SymmetricForm(Matrix.diag([-1] + [1] * n), f"F_{n}")


def build_P_m(m: int) -> SymmetricForm:
    """Matrix of ``P_m / 2`` where ``P_m = Q_m + <2m, 2m, 2m>``."""
    half_q = build_Q_m(m).matrix.scale(Fraction(1, 2))
    return SymmetricForm(Matrix.block_diag(half_q, Matrix.diag([m, m, m])), f"P_{m}/2")


def build_A_m(m: int, fs: FourSquare | None = None) -> tuple[Matrix, Matrix]:
    """The closed-form pair ``(A_m, A_m^{-1})``.

    ``fs`` defaults to :func:`four_square`; any signed decomposition works.
    """
    require_squarefree(m)
    if fs is None:
        fs = four_square(m)
    if fs.total != m:
        raise ValueError(f"{fs} is not a four-square decomposition of {m}")
    w, x, y, z = fs.as_list()
    h = Fraction(1, 2)

    def q(v):
        return Fraction(v, m)

    if m % 4 == 3:
        a = [
            [h, -h, 0, 0, 0, 0, 0],
            [h, h, 0, 0, 0, 0, 0],
            [0, 0, 1, h, 0, 0, 0],
            [0, 0, 0, -w * h, -x, -y, -z],
            [0, 0, 0, -x * h, w, z, -y],
            [0, 0, 0, -y * h, -z, w, x],
            [0, 0, 0, -z * h, y, -x, w],
        ]
        a_inv = [
            [1, 1, 0, 0, 0, 0, 0],
            [-1, 1, 0, 0, 0, 0, 0],
            [0, 0, 1, q(w), q(x), q(y), q(z)],
            [0, 0, 0, q(-2 * w), q(-2 * x), q(-2 * y), q(-2 * z)],
            [0, 0, 0, q(-x), q(w), q(-z), q(y)],
            [0, 0, 0, q(-y), q(z), q(w), q(-x)],
            [0, 0, 0, q(-z), q(-y), q(x), q(w)],
        ]
    else:
        a = [
            [h, -h, 0, 0, 0, 0, 0],
            [h, h, 0, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0, 0],
            [0, 0, 0, w, -x, -y, -z],
            [0, 0, 0, x, w, z, -y],
            [0, 0, 0, y, -z, w, x],
            [0, 0, 0, z, y, -x, w],
        ]
        a_inv = [
            [1, 1, 0, 0, 0, 0, 0],
            [-1, 1, 0, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0, 0],
            [0, 0, 0, q(w), q(x), q(y), q(z)],
            [0, 0, 0, q(-x), q(w), q(-z), q(y)],
            [0, 0, 0, q(-y), q(z), q(w), q(-x)],
            [0, 0, 0, q(-z), q(-y), q(x), q(w)],
        ]
    return Matrix(a), Matrix(a_inv)


def check_equivalence(a: Matrix, s1: SymmetricForm, s2: SymmetricForm) -> bool:
    """True iff ``a^t s1 a == s2`` exactly."""
    if a.nrows != s1.dim or a.ncols != s2.dim:
        raise DimensionError(f"{a.shape} does not map between forms of dim {s1.dim}, {s2.dim}")
    return a.T @ s1.matrix @ a == s2.matrix
