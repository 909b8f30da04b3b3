"""Arithmetic in the ring of integers O_m of Q(sqrt(-m)) and in 2x2 matrices over it.

Elements are integer coordinate pairs over the basis {1, w} with
``w = sqrt(-m)`` when m = 1, 2 mod 4 and ``w = (1 + sqrt(-m)) / 2`` when
m = 3 mod 4 (where ``w^2 = w - k``, ``k = (m + 1) / 4``).
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .exact import Matrix

__all__ = [
    "QuadInt",
    "Mat2O",
    "MixedRingError",
    "o_add",
    "o_mul",
    "o_norm",
    "mat2_mul",
    "mat2_det",
    "phi_m",
    "is_congruence_level",
    "in_delta_m",
    "level2_params",
    "GENERATORS",
    "generator",
    "eval_word",
    "invert_word",
    "free_reduce",
    "random_word",
]


class MixedRingError(ValueError):
    pass


def _k(m: int) -> int:
    return (m + 1) // 4


@dataclass(frozen=True, slots=True)
class QuadInt:
    """``a0 + a1*w`` in O_m."""

    a0: int
    a1: int
    m: int

    @classmethod
    def of(cls, m: int, n: int) -> "QuadInt":
        return cls(n, 0, m)

    @classmethod
    def omega(cls, m: int) -> "QuadInt":
        return cls(0, 1, m)

    def _check(self, other: "QuadInt"):
        if self.m != other.m:
            raise MixedRingError(f"cannot combine elements of O_{self.m} and O_{other.m}")

    def __add__(self, other: "QuadInt") -> "QuadInt":
        self._check(other)
        return QuadInt(self.a0 + other.a0, self.a1 + other.a1, self.m)

    def __sub__(self, other: "QuadInt") -> "QuadInt":
        self._check(other)
        return QuadInt(self.a0 - other.a0, self.a1 - other.a1, self.m)

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.a0, -self.a1, self.m)

    def __mul__(self, other: "QuadInt") -> "QuadInt":
        self._check(other)
        x0, x1, m = self.a0, self.a1, self.m
        y0, y1 = other.a0, other.a1
        if m % 4 == 3:
            k = _k(m)
            return QuadInt(x0 * y0 - k * x1 * y1, x0 * y1 + x1 * y0 + x1 * y1, m)
        return QuadInt(x0 * y0 - m * x1 * y1, x0 * y1 + x1 * y0, m)

    def norm(self) -> int:
        x0, x1, m = self.a0, self.a1, self.m
        if m % 4 == 3:
            return x0 * x0 + x0 * x1 + _k(m) * x1 * x1
        return x0 * x0 + m * x1 * x1

    def divisible_by(self, n: int) -> bool:
        return self.a0 % n == 0 and self.a1 % n == 0

    def is_zero(self) -> bool:
        return self.a0 == 0 and self.a1 == 0

    def __str__(self):
        if self.a1 == 0:
            return str(self.a0)
        return f"{self.a0}{self.a1:+d}w"


def o_add(x: QuadInt, y: QuadInt) -> QuadInt:
    return x + y


def o_mul(x: QuadInt, y: QuadInt) -> QuadInt:
    return x * y


def o_norm(x: QuadInt) -> int:
    return x.norm()


@dataclass(frozen=True, slots=True)
class Mat2O:
    """2x2 matrix ``[[a, b], [c, d]]`` over O_m."""

    a: QuadInt
    b: QuadInt
    c: QuadInt
    d: QuadInt

    def __post_init__(self):
        m = self.a.m
        if not (self.b.m == self.c.m == self.d.m == m):
            raise MixedRingError("entries from different rings")

    @property
    def m(self) -> int:
        return self.a.m

    @classmethod
    def from_coords(cls, m: int, coords) -> "Mat2O":
        """Build from ``((a0, a1), (b0, b1), (c0, c1), (d0, d1))``."""
        return cls(*(QuadInt(x0, x1, m) for x0, x1 in coords))

    @classmethod
    def identity(cls, m: int) -> "Mat2O":
        one, zero = QuadInt(1, 0, m), QuadInt(0, 0, m)
        return cls(one, zero, zero, one)

    def coords(self) -> tuple[tuple[int, int], ...]:
        return tuple((e.a0, e.a1) for e in (self.a, self.b, self.c, self.d))

    def __matmul__(self, other: "Mat2O") -> "Mat2O":
        if self.m != other.m:
            raise MixedRingError(f"cannot multiply matrices over O_{self.m} and O_{other.m}")
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return Mat2O(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __neg__(self) -> "Mat2O":
        return Mat2O(-self.a, -self.b, -self.c, -self.d)

    def det(self) -> QuadInt:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2O":
        """Inverse of a matrix with determinant +-1."""
        dt = self.det()
        if dt.a1 != 0 or dt.a0 not in (1, -1):
            raise ValueError("only unit-determinant (+-1) matrices are inverted")
        s = dt.a0
        adj = Mat2O(self.d, -self.b, -self.c, self.a)
        return adj if s == 1 else -adj

    def psl_equal(self, other: "Mat2O") -> bool:
        return self == other or self == -other

    def psl_key(self) -> tuple:
        return min(self.coords(), (-self).coords())

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def mat2_mul(x: Mat2O, y: Mat2O) -> Mat2O:
    return x @ y


def mat2_det(x: Mat2O) -> QuadInt:
    return x.det()


def _phi_raw_12(m: int, alpha: Mat2O) -> list[list[int]]:
    (a0, a1), (b0, b1), (c0, c1), (d0, d1) = alpha.coords()
    return [
        [d0 * d0 + m * d1 * d1, -c0 * c0 - m * c1 * c1,
         2 * (c0 * d0 + m * c1 * d1), -2 * m * (c1 * d0 - c0 * d1)],
        [-b0 * b0 - m * b1 * b1, a0 * a0 + m * a1 * a1,
         -2 * (a0 * b0 + m * a1 * b1), 2 * m * (a1 * b0 - a0 * b1)],
        [b0 * d0 + m * b1 * d1, -a0 * c0 - m * a1 * c1,
         b0 * c0 + m * b1 * c1 + a0 * d0 + m * a1 * d1,
         m * (b1 * c0 - b0 * c1 - a1 * d0 + a0 * d1)],
        [b1 * d0 - b0 * d1, a0 * c1 - a1 * c0,
         b1 * c0 - b0 * c1 + a1 * d0 - a0 * d1,
         -b0 * c0 - m * b1 * c1 + a0 * d0 + m * a1 * d1],
    ]


def _phi_raw_3(m: int, alpha: Mat2O) -> list[list[int]]:
    k = _k(m)
    (a0, a1), (b0, b1), (c0, c1), (d0, d1) = alpha.coords()
    return [
        [d0 * d0 + d1 * d0 + k * d1 * d1,
         -c0 * c0 - c1 * c0 - k * c1 * c1,
         2 * c0 * d0 + c1 * d0 + c0 * d1 + 2 * k * c1 * d1,
         c0 * d0 + 2 * k * c1 * d0 - 2 * k * c0 * d1 + c0 * d1 + k * c1 * d1],
        [-b0 * b0 - b1 * b0 - k * b1 * b1,
         a0 * a0 + a1 * a0 + k * a1 * a1,
         -2 * a0 * b0 - a1 * b0 - a0 * b1 - 2 * k * a1 * b1,
         -a0 * b0 - 2 * k * a1 * b0 + 2 * k * a0 * b1 - a0 * b1 - k * a1 * b1],
        [b0 * d0 + b1 * d0 + k * b1 * d1,
         -a0 * c0 - a1 * c0 - k * a1 * c1,
         b0 * c0 + b1 * c0 + k * b1 * c1 + a0 * d0 + a1 * d0 + k * a1 * d1,
         b0 * c0 - k * b1 * c0 + b1 * c0 + k * b0 * c1 + k * b1 * c1 + k * a1 * d0 - k * a0 * d1],
        [b0 * d1 - b1 * d0,
         a1 * c0 - a0 * c1,
         -b1 * c0 + b0 * c1 - a1 * d0 + a0 * d1,
         -b0 * c0 - b1 * c0 - k * b1 * c1 + a0 * d0 + a0 * d1 + k * a1 * d1],
    ]


def phi_m(alpha: Mat2O) -> Matrix:
    """Image of ``alpha`` in SO(Q_m; Z).

    Only unit determinants (+-1) are accepted; the result is the polynomial
    matrix divided by the determinant, so it is integral.
    """
    m = alpha.m
    dt = alpha.det()
    if dt.a1 != 0 or dt.a0 not in (1, -1):
        raise ValueError(f"phi_m needs det = +-1, got {dt}")
    raw = _phi_raw_3(m, alpha) if m % 4 == 3 else _phi_raw_12(m, alpha)
    if dt.a0 == -1:
        raw = [[-x for x in row] for row in raw]
    return Matrix(raw)


def is_congruence_level(alpha: Mat2O, level: int) -> bool:
    """``alpha = +-I`` modulo ``level * O_m`` (PSL convention)."""
    m = alpha.m
    for s in (1, -1):
        diag = QuadInt(s, 0, m)
        if ((alpha.a - diag).divisible_by(level) and alpha.b.divisible_by(level)
                and alpha.c.divisible_by(level) and (alpha.d - diag).divisible_by(level)):
            return True
    return False


def level2_params(alpha: Mat2O) -> dict[str, int]:
    """Coordinates ``a0..d1`` with ``alpha = [[1+2a, 2b], [2c, 1+2d]]``.

    Requires ``alpha = I mod 2``; since ``-I = I mod 2`` the representative
    itself is used.
    """
    if not is_congruence_level(alpha, 2):
        raise ValueError("matrix is not congruent to the identity mod 2")
    (a0, a1), (b0, b1), (c0, c1), (d0, d1) = alpha.coords()
    return {
        "a0": (a0 - 1) // 2, "a1": a1 // 2,
        "b0": b0 // 2, "b1": b1 // 2,
        "c0": c0 // 2, "c1": c1 // 2,
        "d0": (d0 - 1) // 2, "d1": d1 // 2,
    }


def in_delta_m(alpha: Mat2O) -> bool:
    """Membership in the special subgroup Delta_m.

    Level 2 when m = 1, 2 mod 4; for m = 3 mod 4 additionally ``b1 = c1 mod 2``
    where ``b = 2 b0 + 2 b1 w`` and ``c = 2 c0 + 2 c1 w``.  The parity
    condition is invariant under ``alpha -> -alpha``.
    """
    if not is_congruence_level(alpha, 2):
        return False
    if alpha.m % 4 != 3:
        return True
    p = level2_params(alpha)
    return (p["b1"] - p["c1"]) % 2 == 0


# Words over T = [[1,1],[0,1]], U = [[1,0],[w,1]], S = [[0,-1],[1,0]];
# lower case letters are inverses.
GENERATORS = "TUS"


def generator(m: int, letter: str) -> Mat2O:
    if letter == "T":
        return Mat2O.from_coords(m, ((1, 0), (1, 0), (0, 0), (1, 0)))
    if letter == "t":
        return Mat2O.from_coords(m, ((1, 0), (-1, 0), (0, 0), (1, 0)))
    if letter == "U":
        return Mat2O.from_coords(m, ((1, 0), (0, 0), (0, 1), (1, 0)))
    if letter == "u":
        return Mat2O.from_coords(m, ((1, 0), (0, 0), (0, -1), (1, 0)))
    if letter == "S":
        return Mat2O.from_coords(m, ((0, 0), (-1, 0), (1, 0), (0, 0)))
    if letter == "s":
        return Mat2O.from_coords(m, ((0, 0), (1, 0), (-1, 0), (0, 0)))
    raise ValueError(f"unknown generator letter {letter!r}")


def eval_word(m: int, word: str) -> Mat2O:
    out = Mat2O.identity(m)
    for ch in word:
        out = out @ generator(m, ch)
    return out


def invert_word(word: str) -> str:
    return word[::-1].swapcase()


def free_reduce(word: str) -> str:
    """Cancel adjacent ``xX`` / ``Xx`` pairs."""
    out: list[str] = []
    for ch in word:
        if out and out[-1] == ch.swapcase() and out[-1] != ch:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def random_word(rng: random.Random, max_len: int = 12, alphabet: str = "TtUuSs") -> str:
    n = rng.randint(0, max_len)
    return "".join(rng.choice(alphabet) for _ in range(n))
