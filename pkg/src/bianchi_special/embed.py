"""Embedding Delta_m into the right-angled Coxeter group SO+(F_6; Z)_(2).

An element N of Delta_m is sent to ``C = A_m N' A_m^{-1}`` where
``N' = diag(phi_m(N), I_3)``.  :func:`certify_element` checks the five
conditions that place C in the level-2 subgroup of SO+(F_6; Z).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .certificate import Certificate
from .exact import DimensionError, Matrix
from .finite import (THEOREM_INDEX, FinGroup, delta_image, enumerate_psl, index_formula,
                     level_image, splitting_type)
from .quadform import (FourSquare, build_A_m, build_F, build_P_m, build_Q_m, check_equivalence,
                       four_square, require_squarefree)
from .ring import (Mat2O, eval_word, free_reduce, in_delta_m, invert_word, phi_m, random_word)

__all__ = [
    "RacgMembershipVerdict",
    "extend_to_7",
    "conjugate",
    "certify_element",
    "certify_family",
    "reverify_family",
    "sample_subgroup_words",
    "sample_delta_words",
    "sample_level_words",
    "predicted_mod2_pattern",
    "REMARK_ALPHA",
    "REMARK_PRINTED",
    "remark_counterexample",
]

_F6 = build_F(6).matrix
_I7 = Matrix.identity(7)


@dataclass(frozen=True)
class RacgMembershipVerdict:
    integral: bool
    congruent_identity_mod2: bool
    preserves_F: bool
    det_one: bool
    positive_sheet: bool
    witness: Matrix

    @property
    def passed(self) -> bool:
        return (self.integral and self.congruent_identity_mod2 and self.preserves_F
                and self.det_one and self.positive_sheet)

    def flags(self) -> dict[str, bool]:
        return {
            "integral": self.integral,
            "congruent_identity_mod2": self.congruent_identity_mod2,
            "preserves_F": self.preserves_F,
            "det_one": self.det_one,
            "positive_sheet": self.positive_sheet,
            "pass": self.passed,
        }


def racg_verdict(c: Matrix, form: Matrix) -> RacgMembershipVerdict:
    """Membership of ``c`` in SO+(form; Z)_(2); sheet read off the (0,0) entry."""
    integral = c.is_integral()
    return RacgMembershipVerdict(
        integral=integral,
        congruent_identity_mod2=integral and c.reduce_mod(2).is_identity(),
        preserves_F=c.T @ form @ c == form,
        det_one=c.det() == 1,
        positive_sheet=c[0, 0] > 0,
        witness=c,
    )


def extend_to_7(phi: Matrix) -> Matrix:
    """Block diagonal ``diag(phi, I_3)``."""
    if phi.shape != (4, 4):
        raise DimensionError(f"expected a 4x4 matrix, got {phi.shape}")
    return Matrix.block_diag(phi, Matrix.identity(3))


@lru_cache(maxsize=None)
def _conjugators(m: int, fs: FourSquare) -> tuple[Matrix, Matrix]:
    return build_A_m(m, fs)


def conjugate(m: int, alpha: Mat2O, fs: FourSquare | None = None) -> Matrix:
    fs = fs or four_square(m)
    a, a_inv = _conjugators(m, fs)
    return a @ extend_to_7(phi_m(alpha)) @ a_inv


def certify_element(m: int, alpha: Mat2O, fs: FourSquare | None = None) -> RacgMembershipVerdict:
    """Check that the image of ``alpha`` lies in SO+(F_6; Z)_(2).

    Failures are reported in the verdict rather than raised, so elements
    outside Delta_m can be examined too.
    """
    if alpha.m != m:
        raise ValueError(f"matrix is over O_{alpha.m}, not O_{m}")
    return racg_verdict(conjugate(m, alpha, fs), _F6)


def predicted_mod2_pattern(fs: FourSquare, beta: int) -> Matrix:
    """Residue mod 2 of the conjugate of a level-2 element, m = 3 mod 4.

    ``beta = b1 + c1``; beta even gives the identity.
    """
    w, x, y, z = (v * beta % 2 for v in fs.as_list())
    b = beta % 2
    return Matrix([
        [1, 0, b, w, x, y, z],
        [0, 1, b, w, x, y, z],
        [b, b, 1, 0, 0, 0, 0],
        [w, w, 0, 1, 0, 0, 0],
        [x, x, 0, 0, 1, 0, 0],
        [y, y, 0, 0, 0, 1, 0],
        [z, z, 0, 0, 0, 0, 1],
    ])


# -- sampling ---------------------------------------------------------------

def _coset_key(G: FinGroup, sub: list, x) -> tuple:
    return min(G.mul(d, x) for d in sub)


def sample_subgroup_words(m: int, image: FinGroup, count: int, rng: random.Random,
                          max_len: int = 12, max_attempts: int | None = None) -> list[str]:
    """Words for distinct nontrivial elements of the full preimage of ``image``.

    ``image`` is a subgroup of PSL(2, O_m / 4).  Random words are bucketed by
    their right coset ``H w``; two words ``u, v`` in one bucket give
    ``u v^-1`` in the preimage.  The identity is excluded.
    """
    G = enumerate_psl(m, image.ring.k)
    sub = list(image.elements)
    buckets: dict[tuple, list[str]] = {_coset_key(G, sub, G.identity): [""]}
    out: list[str] = []
    seen = {Mat2O.identity(m).psl_key()}
    attempts = 0
    limit = max_attempts if max_attempts is not None else 400 * max(count, 1)
    while len(out) < count and attempts < limit:
        attempts += 1
        w = random_word(rng, max_len)
        key = _coset_key(G, sub, G.reduce(eval_word(m, w)))
        bucket = buckets.setdefault(key, [])
        if bucket:
            cand = free_reduce(w + invert_word(rng.choice(bucket)))
            k = eval_word(m, cand).psl_key()
            if k not in seen:
                seen.add(k)
                out.append(cand)
        bucket.append(w)
    return out


def sample_delta_words(m: int, count: int, rng: random.Random, max_len: int = 12) -> list[str]:
    return sample_subgroup_words(m, delta_image(m), count, rng, max_len)


def sample_level_words(m: int, level: int, count: int, rng: random.Random,
                       max_len: int = 12) -> list[str]:
    return sample_subgroup_words(m, level_image(m, level, 2), count, rng, max_len)


# -- certificates -----------------------------------------------------------

def _identities(m: int, fs: FourSquare) -> dict[str, bool]:
    a, a_inv = build_A_m(m, fs)
    s_f, s_p = build_F(6), build_P_m(m)
    # m = 1,2 mod 4: +m^2/2 (the quaternion block contributes m^2, the corner 1/2)
    expected_det = Fraction(-m * m, 4) if m % 4 == 3 else Fraction(m * m, 2)
    return {
        "A_times_Ainv_is_I": a @ a_inv == _I7 and a_inv @ a == _I7,
        "Ainv_matches_exact_inverse": a.inverse() == a_inv,
        "At_SF_A_equals_SP": check_equivalence(a, s_f, s_p),
        "det_A": a.det() == expected_det,
        "P_upper_block_is_half_Q": s_p.matrix.submatrix(range(4), range(4))
        == build_Q_m(m).matrix.scale(Fraction(1, 2)),
        "signature_F6_is_(6,1)": s_f.signature() == (6, 1),
        "signature_P_is_(6,1)": s_p.signature() == (6, 1),
    }


def _index_summary(m: int) -> dict:
    G4 = enumerate_psl(m, 2)
    G2 = enumerate_psl(m, 1)
    D = delta_image(m)
    kind = splitting_type(m)
    delta_index = G4.order // D.order
    return {
        "splitting_of_2": kind,
        "level2_index_formula": index_formula(m, 2),
        "level2_index_enumerated": G2.order,
        "level4_index_formula": index_formula(m, 4),
        "level4_index_enumerated": G4.order,
        "delta_index": delta_index,
        "delta_index_expected": THEOREM_INDEX[kind],
        "delta_image_closed": D.is_closed(),
    }


def _check_entry(word: str, alpha: Mat2O, verdict: RacgMembershipVerdict) -> dict:
    return {
        "word": word,
        "alpha": [[str(v) for v in pair] for pair in alpha.coords()],
        "in_delta": in_delta_m(alpha),
        "verdict": verdict.flags(),
        "witness": verdict.witness.to_strings(),
    }


def certify_family(m: int, sample_budget: int = 50, seed: int = 0,
                   fs: FourSquare | None = None) -> Certificate:
    """Bundle the identities, sampled verdicts and the index of Delta_m."""
    require_squarefree(m)
    fs = fs or four_square(m)
    rng = random.Random(seed)
    identities = _identities(m, fs)
    index = _index_summary(m)
    words = [""] + sample_delta_words(m, sample_budget, rng)
    checks = []
    for w in words:
        alpha = eval_word(m, w)
        checks.append(_check_entry(w, alpha, certify_element(m, alpha, fs)))
    claims = {
        "level2_formula_matches_enumeration":
            index["level2_index_formula"] == index["level2_index_enumerated"],
        "level4_formula_matches_enumeration":
            index["level4_index_formula"] == index["level4_index_enumerated"],
        "delta_index_matches_theorem": index["delta_index"] == index["delta_index_expected"],
        "delta_image_closed": index["delta_image_closed"],
        "samples_in_delta": all(c["in_delta"] for c in checks),
        "sample_budget_met": len(checks) - 1 >= sample_budget,
    }
    passed = (all(identities.values()) and all(claims.values())
              and all(c["verdict"]["pass"] for c in checks))
    return Certificate(
        claim="embedding",
        m=m,
        foursquare=fs.as_list(),
        checks=checks,
        index=index["delta_index"],
        passed=passed,
        summary={"identities": identities, "indices": index, "claims": claims,
                 "seed": seed, "samples": len(checks)},
    )


def reverify_family(cert: Certificate) -> bool:
    """Recompute every check of an ``embedding`` certificate from its words."""
    if cert.claim != "embedding":
        raise ValueError(f"not an embedding certificate: {cert.claim!r}")
    m = cert.m
    fs = FourSquare(*cert.foursquare)
    if fs.total != m:
        return False
    if not all(_identities(m, fs).values()):
        return False
    if _index_summary(m)["delta_index"] != cert.index:
        return False
    for chk in cert.checks:
        alpha = eval_word(m, chk["word"])
        if [[str(v) for v in p] for p in alpha.coords()] != chk["alpha"]:
            return False
        if not in_delta_m(alpha):
            return False
        verdict = certify_element(m, alpha, fs)
        if verdict.flags() != chk["verdict"] or not verdict.passed:
            return False
        if "witness" in chk and Matrix.from_strings(chk["witness"]) != verdict.witness:
            return False
    return cert.passed


# -- the m = 1 counterexample ---------------------------------------------------

REMARK_ALPHA = Mat2O.from_coords(1, ((1, 0), (1, 1), (0, 0), (1, 0)))

REMARK_PRINTED = Matrix([
    [2, 1, 1, 1, 0, 0, 0],
    [-1, 0, -1, -1, 0, 0, 0],
    [1, 1, 1, 0, 0, 0, 0],
    [1, 1, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 1],
])


def remark_counterexample() -> dict:
    """The level-(1+i) element of PSL(2, Z[i]) whose image is not = I mod 2.

    Both conjugation orders are computed; only ``A N' A^-1`` reproduces the
    printed matrix.
    """
    fs = FourSquare(1, 0, 0, 0)
    a, a_inv = build_A_m(1, fs)
    n7 = extend_to_7(phi_m(REMARK_ALPHA))
    forward = a @ n7 @ a_inv
    backward = a_inv @ n7 @ a
    verdict = certify_element(1, REMARK_ALPHA, fs)
    return {
        "phi": phi_m(REMARK_ALPHA),
        "A_N_Ainv": forward,
        "Ainv_N_A": backward,
        "matches_A_N_Ainv": forward == REMARK_PRINTED,
        "matches_Ainv_N_A": backward == REMARK_PRINTED,
        "verdict": verdict,
    }
