"""The cocompact family SO+(Q'_m; Z) for primes m = 7 mod 8.

``Q'_m = -m x1^2 + x2^2 + x3^2 + x4^2``.  The kernel Delta^m of the sign
character (top-left entry mod m) has its level-2 subgroup embedded in
SO+(F_4; Z)_(2) by conjugating ``diag(N, 1)`` with the 5x5 matrix ``A'_m``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, isqrt

from .certificate import Certificate
from .embed import racg_verdict
from .exact import Matrix
from .quadform import SymmetricForm, build_F, check_equivalence

__all__ = [
    "CocompactContext",
    "is_prime",
    "build_context",
    "preserves_form",
    "first_column_residue",
    "sign_character",
    "mod2_closure_order",
    "integral_reflections",
    "default_generators",
    "SO_Q7_GENERATORS",
    "DELTA7_GENERATORS",
    "GAMMA_GENERATORS",
    "resolve_gamma_entry",
    "eval_word",
    "sample_kernel_words",
    "printed_conjugate",
    "certify_cocompact",
    "reverify_cocompact",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class CocompactContext:
    m: int
    k: int
    q_form: SymmetricForm
    p_form: SymmetricForm
    a: Matrix
    a_inv: Matrix


def build_context(m: int) -> CocompactContext:
    if not is_prime(m) or m % 8 != 7:
        raise ValueError(f"m={m} must be a prime congruent to 7 mod 8")
    k = (m + 1) // 8
    assert m == (4 * k) ** 2 - (4 * k - 1) ** 2
    q_form = SymmetricForm(Matrix.diag([-m, 1, 1, 1]), f"Q'_{m}")
    p_form = SymmetricForm(Matrix.diag([-m, 1, 1, 1, m]), f"P'_{m}")
    u, v = 4 * k, 4 * k - 1
    a = Matrix([
        [u, 0, 0, 0, -v],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
        [-v, 0, 0, 0, u],
    ])
    a_inv = Matrix([
        [Fraction(u, m), 0, 0, 0, Fraction(v, m)],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
        [Fraction(v, m), 0, 0, 0, Fraction(u, m)],
    ])
    return CocompactContext(m, k, q_form, p_form, a, a_inv)


def preserves_form(n: Matrix, s: SymmetricForm) -> bool:
    return check_equivalence(n, s, s)


def _q_form(m: int) -> SymmetricForm:
    return SymmetricForm(Matrix.diag([-m, 1, 1, 1]), f"Q'_{m}")


def _require_in_group(n: Matrix, m: int) -> None:
    if not (n.is_integral() and preserves_form(n, _q_form(m)) and n[0, 0] > 0):
        raise ValueError("matrix is not in SO+(Q'_m; Z)")


def first_column_residue(n: Matrix, m: int) -> tuple[int, int, int, int]:
    """First column mod m; always (+-1, 0, 0, 0) on the group."""
    _require_in_group(n, m)
    return tuple(n[i, 0] % m for i in range(4))


def sign_character(n: Matrix, m: int) -> int:
    _require_in_group(n, m)
    r = n[0, 0] % m
    if r == 1:
        return 1
    if r == m - 1:
        return -1
    raise ArithmeticError(f"top-left entry is {r} mod {m}, not +-1")


def _mod2_key(n: Matrix) -> tuple:
    return tuple(tuple(x % 2 for x in row) for row in n.rows)


def mod2_closure_order(gens: list[Matrix]) -> int:
    """Order of the group generated by the reductions mod 2."""
    if not gens:
        return 1
    dim = gens[0].nrows
    g2 = [_mod2_key(g) for g in gens]

    def mul(x, y):
        cols = list(zip(*y))
        return tuple(tuple(sum(a & b for a, b in zip(row, col)) & 1 for col in cols) for row in x)

    ident = tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in g2:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


# -- the m = 7 generators -------------------------------------------------------

_R1 = Matrix([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]])
_R2 = Matrix([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0]])

SO_Q7_GENERATORS = (
    _R1,
    _R2,
    Matrix([[6, 1, 2, 0], [-7, -2, -2, 0], [-14, -2, -5, 0], [0, 0, 0, 1]]),
)

DELTA7_GENERATORS = (
    _R1,
    _R2,
    Matrix([[8, 2, 2, 1], [-14, -3, -4, -2], [-14, -4, -3, -2], [7, 2, 2, 0]]),
    Matrix([[8, 0, 3, 0], [0, 1, 0, 0], [-21, 0, -8, 0], [0, 0, 0, -1]]),
)


def _gamma_second(entry: Fraction) -> Matrix:
    h = Fraction(1, 2)
    return Matrix([
        [9 * h, h, 3 * h, h],
        [-7 * h, h, -3 * h, -h],
        [-21 * h, -3 * h, entry, -3 * h],
        [7 * h, h, 3 * h, -h],
    ])


def resolve_gamma_entry(m: int = 7) -> dict:
    """Decide the garbled (3,3) entry of the second tetrahedral generator.

    Exactly one of the readings -7 and -7/2 preserves Q'_7.
    """
    q = _q_form(m)
    readings = {"-7": Fraction(-7), "-7/2": Fraction(-7, 2)}
    ok = {name: preserves_form(_gamma_second(v), q) for name, v in readings.items()}
    chosen = [name for name, good in ok.items() if good]
    return {"candidates": ok, "resolved": chosen[0] if len(chosen) == 1 else None}


GAMMA_GENERATORS = (_R1, _gamma_second(Fraction(-7, 2)), _R2)


# -- generic generators for other m ---------------------------------------------------

def integral_reflections(m: int, max_v0: int = 2) -> list[Matrix]:
    """Integral reflections ``x -> x - 2 (x.v) v / (v.v)`` in positive vectors of Q'_m.

    Searches primitive ``v`` with first coordinate ``0 <= v0 <= max_v0`` and
    norm ``0 < Q'(v) <= 2m``.
    """
    out = []
    seen = set()
    for v0 in range(max_v0 + 1):
        bound = isqrt(m * v0 * v0 + 2 * m)
        rng = range(-bound, bound + 1)
        for v1, v2, v3 in product(rng, repeat=3):
            v = (v0, v1, v2, v3)
            if v0 == 0 and v <= tuple(-x for x in v):
                continue
            n = -m * v0 * v0 + v1 * v1 + v2 * v2 + v3 * v3
            if not 0 < n <= 2 * m or gcd(*v) != 1:
                continue
            sv = (-m * v0, v1, v2, v3)
            if any((2 * v[i] * sv[j]) % n for i in range(4) for j in range(4)):
                continue
            r = Matrix([[int(i == j) - (2 * v[i] * sv[j]) // n for j in range(4)]
                        for i in range(4)])
            if r not in seen:
                seen.add(r)
                out.append(r)
    return out


def default_generators(m: int) -> tuple[Matrix, ...]:
    """Generators used for sampling.

    The printed Delta^7 generators for m = 7; otherwise products ``r_0 r_j``
    of integral reflections, which lie in SO+(Q'_m; Z).
    """
    if m == 7:
        return DELTA7_GENERATORS
    refl = integral_reflections(m)
    flat = [r for r in refl if r[0, 0] == 1][:4]
    steep = [r for r in refl if r[0, 0] != 1][:9]
    chosen = flat + steep
    return tuple(dict.fromkeys(chosen[0] @ r for r in chosen[1:]))[:12]


# -- words and sampling -------------------------------------------------------------

_LETTERS = "abcdefghijkl"


def eval_word(gens: tuple[Matrix, ...], word: str) -> Matrix:
    """Lower-case letters are generators in order, upper-case their inverses."""
    table = _letter_table(tuple(gens))
    out = Matrix.identity(gens[0].nrows)
    for ch in word:
        out = out @ table[ch]
    return out


@lru_cache(maxsize=32)
def _letter_table(gens: tuple[Matrix, ...]) -> dict[str, Matrix]:
    table = {}
    for letter, g in zip(_LETTERS, gens):
        table[letter] = g
        table[letter.upper()] = g.inverse()
    return table


def _random_word(rng: random.Random, ngens: int, max_len: int) -> str:
    alphabet = _LETTERS[:ngens] + _LETTERS[:ngens].upper()
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


def _reduce(word: str) -> str:
    out: list[str] = []
    for ch in word:
        if out and out[-1] != ch and out[-1].lower() == ch.lower():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def sample_kernel_words(m: int, gens: tuple[Matrix, ...], count: int, rng: random.Random,
                        max_len: int = 16) -> list[str]:
    """Distinct nontrivial words in Delta^m_(2): sign +1 and = I mod 2.

    Words are bucketed by (mod 2 image, sign character); ``u v^-1`` for u, v
    in one bucket lands in the kernel.
    """
    buckets: dict[tuple, list[tuple[str, Matrix]]] = {}
    ident = Matrix.identity(4)
    buckets[(_mod2_key(ident), 1)] = [("", ident)]
    seen = {ident}
    out: list[str] = []
    attempts = 0
    while len(out) < count and attempts < 400 * max(count, 1):
        attempts += 1
        w = _random_word(rng, len(gens), max_len)
        n = eval_word(gens, w)
        key = (_mod2_key(n), sign_character(n, m))
        bucket = buckets.setdefault(key, [])
        if bucket:
            v, nv = rng.choice(bucket)
            cand = _reduce(w + v[::-1].swapcase())
            c = eval_word(gens, cand)
            if c not in seen:
                seen.add(c)
                out.append(cand)
        bucket.append((w, n))
    return out


def printed_conjugate(n: Matrix, m: int) -> Matrix:
    """Closed form of ``A'_m diag(N, 1) A'_m^-1`` in terms of the entries of N."""
    k = (m + 1) // 8
    a1 = (n[0, 0] - 1) // (2 * m)
    a2, a3, a4 = (n[i, 0] // (2 * m) for i in (1, 2, 3))
    b1, c1, d1 = (n[0, j] // 2 for j in (1, 2, 3))
    rows = [
        [32 * a1 * k * k + 1, 8 * k * b1, 8 * k * c1, 8 * k * d1, 32 * k * k * a1 - 8 * k * a1],
    ]
    for i, ai in zip((1, 2, 3), (a2, a3, a4)):
        rows.append([8 * k * ai, n[i, 1], n[i, 2], n[i, 3], 8 * k * ai - 2 * ai])
    rows.append([8 * k * a1 - 32 * k * k * a1, 2 * b1 - 8 * k * b1, 2 * c1 - 8 * k * c1,
                 2 * d1 - 8 * k * d1, -32 * a1 * k * k + 16 * a1 * k - 2 * a1 + 1])
    return Matrix(rows)


_F4 = build_F(4).matrix


def _verdict_entry(ctx: CocompactContext, gens, word: str) -> dict:
    n = eval_word(gens, word)
    c = ctx.a @ Matrix.block_diag(n, Matrix.identity(1)) @ ctx.a_inv
    verdict = racg_verdict(c, _F4)
    return {
        "word": word,
        "n": n.to_strings(),
        "first_column_mod_m": list(first_column_residue(n, ctx.m)),
        "sign": sign_character(n, ctx.m),
        "verdict": verdict.flags(),
        "matches_closed_form": c == printed_conjugate(n, ctx.m),
        "witness": c.to_strings(),
    }


def certify_cocompact(m: int, sample_budget: int = 25, seed: int = 0) -> Certificate:
    ctx = build_context(m)
    rng = random.Random(seed)
    gens = default_generators(m)
    f4 = build_F(4)
    identities = {
        "At_SF_A_equals_SP": check_equivalence(ctx.a, f4, ctx.p_form),
        "A_times_Ainv_is_I": ctx.a @ ctx.a_inv == Matrix.identity(5),
        "det_A_is_m": ctx.a.det() == m,
        "m_is_difference_of_squares": m == (4 * ctx.k) ** 2 - (4 * ctx.k - 1) ** 2,
        "generators_preserve_Q": all(preserves_form(g, ctx.q_form) for g in gens),
    }
    words = [""] + sample_kernel_words(m, gens, sample_budget, rng)
    checks = [_verdict_entry(ctx, gens, w) for w in words]
    order2 = mod2_closure_order(list(gens))
    summary: dict = {"identities": identities, "seed": seed, "samples": len(checks),
                     "generators": [g.to_strings() for g in gens]}
    claims = {
        "samples_in_kernel": all(c["sign"] == 1 and c["first_column_mod_m"] == [1, 0, 0, 0]
                                 for c in checks),
        "closed_form_matches": all(c["matches_closed_form"] for c in checks),
        "sample_budget_met": len(checks) - 1 >= sample_budget,
    }
    index = None
    if m == 7:
        so_order = mod2_closure_order(list(SO_Q7_GENERATORS))
        gamma = resolve_gamma_entry(7)
        claims.update({
            "delta7_mod2_order_is_24": order2 == 24,
            "delta7_generators_have_sign_plus": all(sign_character(g, 7) == 1 for g in gens),
            "so_generators_preserve_Q": all(preserves_form(g, ctx.q_form) for g in SO_Q7_GENERATORS),
            "so_mod2_order_divisible_by_24": so_order % 24 == 0,
            "gamma_entry_resolved": gamma["resolved"] == "-7/2",
            "gamma_generators_preserve_Q": all(preserves_form(g, ctx.q_form) for g in GAMMA_GENERATORS),
        })
        index = order2
        summary.update({
            "delta7_mod2_order": order2,
            "so_q7_mod2_order": so_order,
            "gamma_entry": gamma,
            # [Gamma : Delta^7] = 3 is quoted, not certified
            "gamma_special_index": 3 * order2,
        })
    else:
        summary["generator_mod2_order"] = order2
    summary["claims"] = claims
    passed = (all(identities.values()) and all(claims.values())
              and all(c["verdict"]["pass"] for c in checks))
    return Certificate(claim="cocompact", m=m, foursquare=None, checks=checks,
                       index=index, passed=passed, summary=summary)


def reverify_cocompact(cert: Certificate) -> bool:
    if cert.claim != "cocompact":
        raise ValueError(f"not a cocompact certificate: {cert.claim!r}")
    ctx = build_context(cert.m)
    gens = tuple(Matrix.from_strings(g) for g in cert.summary["generators"])
    if gens != default_generators(cert.m):
        return False
    for chk in cert.checks:
        fresh = _verdict_entry(ctx, gens, chk["word"])
        if fresh != chk or not fresh["verdict"]["pass"]:
            return False
    if cert.m == 7 and mod2_closure_order(list(gens)) != cert.index:
        return False
    return cert.passed
