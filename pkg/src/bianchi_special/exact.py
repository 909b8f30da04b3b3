"""Exact dense matrices over the rationals.

Entries are Python ints (arbitrary precision) or :class:`fractions.Fraction`.
A Fraction with denominator 1 is stored as an int, so integral matrices stay
on the fast integer path and structural equality is exact.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "Matrix",
    "DimensionError",
    "SingularMatrixError",
    "NotIntegralError",
    "mat_mul",
    "mat_inverse",
    "det",
    "reduce_mod",
    "parse_scalar",
]


class DimensionError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


class NotIntegralError(ValueError):
    """Raised when an integer-only operation meets a non-integral entry."""


def _norm(x) -> int | Fraction:
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return _norm(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not an exact rational: {x!r}")


def parse_scalar(s: str) -> int | Fraction:
    """Parse ``"7"``, ``"-3/2"`` and the like into an exact scalar."""
    return _norm(Fraction(s.strip()))


def _fmt(x: int | Fraction) -> str:
    return str(x)


class Matrix:
    """Immutable rectangular matrix of exact rationals."""

    __slots__ = ("_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(_norm(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise DimensionError("matrix must have at least one row and column")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise DimensionError("ragged rows")
        self._rows = data
        self._hash = None

    @classmethod
    def _raw(cls, data: tuple) -> "Matrix":
        # trusted constructor: entries already normalised
        obj = cls.__new__(cls)
        obj._rows = data
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, r: int, c: int) -> "Matrix":
        return cls._raw(tuple((0,) * c for _ in range(r)))

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        n = sum(b.nrows for b in blocks)
        c = sum(b.ncols for b in blocks)
        out = [[0] * c for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b._rows):
                out[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return cls._raw(tuple(tuple(r) for r in out))

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]]) -> "Matrix":
        return cls([[parse_scalar(s) for s in row] for row in rows])

    # -- basic protocol ---------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._rows)
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(map(_fmt, r)) + "]" for r in self._rows)
        return f"Matrix([{body}])"

    def __str__(self):
        cells = [[_fmt(x) for x in r] for r in self._rows]
        width = max(len(s) for r in cells for s in r)
        return "\n".join(" ".join(s.rjust(width) for s in r) for r in cells)

    def to_strings(self) -> list[list[str]]:
        return [[_fmt(x) for x in r] for r in self._rows]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._rows]

    # -- arithmetic -------------------------------------------------------

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = tuple(zip(*other._rows))
        return Matrix._raw(tuple(
            tuple(_norm(sum(a * b for a, b in zip(row, col))) for col in cols)
            for row in self._rows
        ))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._raw(tuple(
            tuple(_norm(a + b) for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)
        ))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._rows))

    def scale(self, c) -> "Matrix":
        c = _norm(c)
        return Matrix._raw(tuple(tuple(_norm(c * a) for a in r) for r in self._rows))

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self._rows)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self._rows[i][j] for j in cols) for i in rows))

    # -- predicates -------------------------------------------------------

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def is_integral(self) -> bool:
        return all(type(x) is int for r in self._rows for x in r)

    def is_identity(self) -> bool:
        return self.is_square() and self == Matrix.identity(self.nrows)

    # -- linear algebra ---------------------------------------------------

    def det(self) -> int | Fraction:
        """Determinant by Bareiss elimination on the row-scaled integer matrix."""
        if not self.is_square():
            raise DimensionError(f"determinant of non-square {self.shape} matrix")
        n = self.nrows
        scale = 1
        work = []
        for row in self._rows:
            d = lcm(*(x.denominator if isinstance(x, Fraction) else 1 for x in row))
            scale *= d
            work.append([int(x * d) for x in row])
        sign = 1
        prev = 1
        for k in range(n - 1):
            if work[k][k] == 0:
                for i in range(k + 1, n):
                    if work[i][k] != 0:
                        work[k], work[i] = work[i], work[k]
                        sign = -sign
                        break
                else:
                    return 0
            pivot = work[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    work[i][j] = (work[i][j] * pivot - work[i][k] * work[k][j]) // prev
            prev = pivot
        return _norm(Fraction(sign * work[n - 1][n - 1], scale))

    def inverse(self) -> "Matrix":
        """Gauss-Jordan inverse over Q."""
        if not self.is_square():
            raise DimensionError(f"inverse of non-square {self.shape} matrix")
        n = self.nrows
        aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
               for i, row in enumerate(self._rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return Matrix([row[n:] for row in aug])

    def reduce_mod(self, n: int) -> "Matrix":
        """Entrywise residues in ``[0, n)``.

        Raises NotIntegralError if some entry has a denominator; callers that
        treat non-integrality as a verdict should check :meth:`is_integral`.
        """
        if n < 2:
            raise ValueError("modulus must be at least 2")
        if not self.is_integral():
            raise NotIntegralError("matrix has non-integral entries")
        return Matrix._raw(tuple(tuple(x % n for x in r) for r in self._rows))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def mat_inverse(a: Matrix) -> Matrix:
    return a.inverse()


def det(a: Matrix) -> int | Fraction:
    return a.det()


def reduce_mod(a: Matrix, n: int) -> Matrix:
    return a.reduce_mod(n)
