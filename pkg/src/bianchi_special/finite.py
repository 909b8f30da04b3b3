"""Finite quotients PSL(2, O_m / 2^k O_m) and indices of congruence subgroups.

Indices of subgroups of the infinite Bianchi group are computed here only
through their images mod 2^k.  That is legitimate exactly when the subgroup
contains the kernel PSL(2, O_m)(2^k), i.e. when it is a full preimage of its
image; every subgroup handled below (level 2, level 4, Delta_m) is.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .quadform import require_squarefree
from .ring import Mat2O, QuadInt

__all__ = [
    "FiniteRing",
    "FinGroup",
    "finite_ring",
    "enumerate_psl",
    "clear_caches",
    "index_formula",
    "splitting_type",
    "subgroup_closure",
    "delta_image",
    "level_image",
    "fig8_generators",
    "fig8_report",
    "fig8_index",
    "THEOREM_INDEX",
]

MAX_K = 2


class FiniteRing:
    """O_m / 2^k O_m with elements encoded as ``x0 + q * x1`` (q = 2^k)."""

    def __init__(self, m: int, k: int):
        self.m = m
        self.k = k
        q = self.q = 2 ** k
        n = self.size = q * q
        # w^2 = s + t w
        if m % 4 == 3:
            s, t = -((m + 1) // 4), 1
        else:
            s, t = -m, 0
        self.law = (s % q, t)
        self.add = [[((i % q + j % q) % q) + q * ((i // q + j // q) % q) for j in range(n)]
                    for i in range(n)]
        self.neg = [((-(i % q)) % q) + q * ((-(i // q)) % q) for i in range(n)]
        self.mul = [[0] * n for _ in range(n)]
        for i in range(n):
            x0, x1 = i % q, i // q
            for j in range(n):
                y0, y1 = j % q, j // q
                c0 = x0 * y0 + s * x1 * y1
                c1 = x0 * y1 + x1 * y0 + t * x1 * y1
                self.mul[i][j] = (c0 % q) + q * (c1 % q)
        self.zero = 0
        self.one = 1

    def encode(self, x0: int, x1: int) -> int:
        return (x0 % self.q) + self.q * (x1 % self.q)

    def decode(self, i: int) -> tuple[int, int]:
        return i % self.q, i // self.q

    def reduce(self, x: QuadInt) -> int:
        return self.encode(x.a0, x.a1)

    def sub(self, i: int, j: int) -> int:
        return self.add[i][self.neg[j]]

    def __repr__(self):
        return f"FiniteRing(m={self.m}, modulus=2^{self.k})"


def _law_key(m: int, k: int) -> tuple[int, int, int]:
    # O_m / 2^k depends on m only through the law w^2 = s + t w reduced mod 2^k
    q = 2 ** k
    if m % 4 == 3:
        return (-((m + 1) // 4)) % q, 1, k
    return (-m) % q, 0, k


_RINGS: dict[tuple, FiniteRing] = {}


def finite_ring(m: int, k: int) -> FiniteRing:
    key = _law_key(m, k)
    if key not in _RINGS:
        _RINGS[key] = FiniteRing(m, k)
    return _RINGS[key]


FinMat = tuple  # (a, b, c, d) of ring element codes


@dataclass
class FinGroup:
    """Subgroup of PSL(2, O_m / 2^k) stored as canonical representatives."""

    ring: FiniteRing
    elements: frozenset
    gens: tuple = field(default=())

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return self.canon(x) in self.elements

    def canon(self, x: FinMat) -> FinMat:
        neg = self.ring.neg
        return min(x, tuple(neg[e] for e in x))

    def mul(self, x: FinMat, y: FinMat) -> FinMat:
        R = self.ring
        mul, add = R.mul, R.add
        a, b, c, d = x
        e, f, g, h = y
        return self.canon((add[mul[a][e]][mul[b][g]], add[mul[a][f]][mul[b][h]],
                           add[mul[c][e]][mul[d][g]], add[mul[c][f]][mul[d][h]]))

    def inv(self, x: FinMat) -> FinMat:
        neg = self.ring.neg
        a, b, c, d = x
        return self.canon((d, neg[b], neg[c], a))

    @property
    def identity(self) -> FinMat:
        return self.canon((1, 0, 0, 1))

    def reduce(self, alpha: Mat2O) -> FinMat:
        """Image of a determinant-one matrix over O_m."""
        R = self.ring
        return self.canon(tuple(R.reduce(e) for e in (alpha.a, alpha.b, alpha.c, alpha.d)))

    def is_closed(self) -> bool:
        els = self.elements
        return all(self.mul(x, y) in els for x in els for y in els)

    def decode(self, x: FinMat) -> tuple[tuple[int, int], ...]:
        return tuple(self.ring.decode(e) for e in x)


_PSL: dict[tuple, frozenset] = {}


def _psl_elements(R: FiniteRing) -> frozenset:
    n, mul, sub, neg = R.size, R.mul, R.sub, R.neg
    by_product = defaultdict(list)
    for b in range(n):
        row = mul[b]
        for c in range(n):
            by_product[row[c]].append((b, c))
    out = set()
    for a in range(n):
        row = mul[a]
        for d in range(n):
            # ad - bc = 1  <=>  bc = ad - 1
            for b, c in by_product.get(sub(row[d], 1), ()):
                x = (a, b, c, d)
                out.add(min(x, (neg[a], neg[b], neg[c], neg[d])))
    return frozenset(out)


def clear_caches() -> None:
    """Forget cached rings and groups (used for cold timings)."""
    _RINGS.clear()
    _PSL.clear()


def enumerate_psl(m: int, k: int) -> FinGroup:
    """All of PSL(2, O_m / 2^k) by brute force over determinant-one 4-tuples."""
    if k < 1 or k > MAX_K:
        raise ValueError(f"k must be in 1..{MAX_K} (brute force over (4^k)^4 tuples)")
    R = finite_ring(m, k)
    key = _law_key(m, k)
    if key not in _PSL:
        _PSL[key] = _psl_elements(R)
    return FinGroup(R, _PSL[key])


def splitting_type(m: int) -> str:
    """How 2 decomposes in O_m: 'ramified', 'inert' or 'split'."""
    if m % 4 in (1, 2):
        return "ramified"
    if m % 8 == 3:
        return "inert"
    if m % 8 == 7:
        return "split"
    raise ValueError(f"m={m} is not square-free")


def index_formula(m: int, ideal: int | str) -> int:
    """[PSL(2,O_m) : PSL(2,O_m)(I)] for I = (2^k) or a prime of norm 2.

    ``ideal`` is a power of two (the principal ideal it generates) or the
    string ``"P2"`` for a prime over 2 of norm 2 (exists unless 2 is inert).
    The product runs over primes P | I with factors 1 - N(P)^-2.
    """
    require_squarefree(m)
    kind = splitting_type(m)
    if ideal == "P2":
        if kind == "inert":
            raise ValueError("2 is inert in O_m: no prime of norm 2")
        return 6
    if not isinstance(ideal, int) or ideal < 2 or ideal & (ideal - 1):
        raise ValueError(f"unsupported ideal {ideal!r}: expected 2^k or 'P2'")
    k = ideal.bit_length() - 1
    norm = 4 ** k
    prime_norms = {"ramified": [2], "inert": [4], "split": [2, 2]}[kind]
    value = Fraction(norm ** 3)
    for p in prime_norms:
        value *= 1 - Fraction(1, p * p)
    if k >= 2:
        # 2 not in I: -I is nontrivial mod I
        value /= 2
    assert value.denominator == 1
    return int(value)


# [PSL(2, O_m) : Delta_m] by residue class
THEOREM_INDEX = {"ramified": 48, "inert": 120, "split": 72}


def subgroup_closure(ambient: FinGroup, gens: Iterable[FinMat]) -> FinGroup:
    gens = tuple(ambient.canon(g) for g in gens)
    for g in gens:
        if g not in ambient.elements:
            raise ValueError(f"generator {ambient.decode(g)} is not in the ambient group")
    ident = ambient.identity
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = ambient.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return FinGroup(ambient.ring, frozenset(seen), gens)


def level_image(m: int, level: int, k: int = 2) -> FinGroup:
    """Image mod 2^k of the principal congruence subgroup of level ``level``."""
    G = enumerate_psl(m, k)
    q = G.ring.q
    if q % level:
        raise ValueError("level must divide the modulus")
    R = G.ring

    def ok(x):
        for sign in (1, -1):
            a, b, c, d = (R.decode(e) for e in x)
            if ((a[0] - sign) % level == 0 and a[1] % level == 0 and b[0] % level == 0
                    and b[1] % level == 0 and c[0] % level == 0 and c[1] % level == 0
                    and (d[0] - sign) % level == 0 and d[1] % level == 0):
                return True
        return False

    return FinGroup(R, frozenset(x for x in G.elements if ok(x)))


def delta_image(m: int) -> FinGroup:
    """Image of Delta_m in PSL(2, O_m / 4).

    Delta_m contains the level-4 subgroup, so this image determines it.
    """
    require_squarefree(m)
    lvl2 = level_image(m, 2, 2)
    if m % 4 != 3:
        return lvl2
    R = lvl2.ring
    # b = 2 b0 + 2 b1 w, c likewise; b1 = c1 mod 2  <=>  w-coords of b, c agree mod 4
    keep = frozenset(x for x in lvl2.elements
                     if (R.decode(x[1])[1] - R.decode(x[2])[1]) % 4 == 0)
    return FinGroup(R, keep)


def fig8_generators() -> tuple[Mat2O, Mat2O]:
    m = 3
    return (Mat2O.from_coords(m, ((1, 0), (1, 0), (0, 0), (1, 0))),
            Mat2O.from_coords(m, ((1, 0), (0, 0), (0, 1), (1, 0))))


def fig8_report() -> dict:
    """Audit trail for [Gamma_8 : Gamma_8 cap Delta_3] computed mod 4."""
    G = enumerate_psl(3, 2)
    gens = [G.reduce(g) for g in fig8_generators()]
    image = subgroup_closure(G, gens)
    delta = delta_image(3)
    inter = image.elements & delta.elements
    return {
        "psl_order_mod4": G.order,
        "fig8_image_order": image.order,
        "fig8_image_index_in_psl_mod4": G.order // image.order,
        "delta3_image_order": delta.order,
        "intersection_order": len(inter),
        "index": image.order // len(inter),
    }


def fig8_index() -> int:
    return fig8_report()["index"]
