"""Right-angled Coxeter groups, their Tits representation, and retractions.

For a simple graph with vertex set V the RACG is generated by involutions
``r_v`` with ``(r_u r_v)^2 = 1`` whenever ``uv`` is an edge.  Word equality
is decided exactly through the (faithful) Tits representation: ``r_i`` acts
by ``e_j -> e_j - 2 B(e_i, e_j) e_i`` with ``B(e_i, e_i) = 1``, ``B = 0`` on
edges and ``B = -1`` on non-edges.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .certificate import Certificate
from .exact import Matrix
from .quadform import require_squarefree
from .ring import Mat2O, in_delta_m

__all__ = [
    "RacgGraph",
    "tits_generators",
    "tits_eval",
    "retract",
    "retract_eval",
    "random_graph",
    "insert_relation",
    "free_retraction_witness",
]


@dataclass(frozen=True)
class RacgGraph:
    vertices: tuple[str, ...]
    edges: frozenset  # of frozenset({i, j})

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise ValueError("duplicate vertex names")
        for e in self.edges:
            if len(e) != 2 or not all(0 <= i < n for i in e):
                raise ValueError(f"bad edge {sorted(e)}")

    @classmethod
    def build(cls, vertices: Sequence[str], edges: Iterable[Sequence[int]]) -> "RacgGraph":
        return cls(tuple(vertices), frozenset(frozenset(e) for e in edges))

    @classmethod
    def from_json(cls, text: str) -> "RacgGraph":
        data = json.loads(text)
        return cls.build(data["vertices"], data["edges"])

    def to_json(self) -> str:
        edges = sorted(sorted(e) for e in self.edges)
        return json.dumps({"vertices": list(self.vertices), "edges": edges})

    def __len__(self):
        return len(self.vertices)

    def adjacent(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edges

    def index(self, name: str) -> int:
        return self.vertices.index(name)

    def induced(self, subset: Iterable[int]) -> tuple["RacgGraph", dict[int, int]]:
        """Induced subgraph and the map old index -> new index."""
        keep = sorted(set(subset))
        relabel = {old: new for new, old in enumerate(keep)}
        edges = [(relabel[i], relabel[j]) for i, j in (sorted(e) for e in self.edges)
                 if i in relabel and j in relabel]
        return RacgGraph.build([self.vertices[i] for i in keep], edges), relabel

    def parse_word(self, text: str) -> list[int]:
        """Vertex names separated by spaces/commas, or one character per letter."""
        text = text.strip()
        if not text:
            return []
        if any(sep in text for sep in " ,"):
            names = [t for t in text.replace(",", " ").split() if t]
        else:
            names = list(text)
        return [self.index(n) for n in names]

    def format_word(self, word: Sequence[int]) -> str:
        names = [self.vertices[i] for i in word]
        if all(len(n) == 1 for n in names):
            return "".join(names)
        return " ".join(names)


def _bilinear(g: RacgGraph, i: int, j: int) -> int:
    if i == j:
        return 1
    return 0 if g.adjacent(i, j) else -1


@lru_cache(maxsize=128)
def tits_generators(g: RacgGraph) -> tuple[Matrix, ...]:
    n = len(g)
    mats = []
    for i in range(n):
        rows = [[int(r == c) for c in range(n)] for r in range(n)]
        for j in range(n):
            rows[i][j] -= 2 * _bilinear(g, i, j)
        mats.append(Matrix(rows))
    return tuple(mats)


def tits_eval(g: RacgGraph, word: Sequence[int]) -> Matrix:
    gens = tits_generators(g) if len(g) else ()
    out = Matrix.identity(max(len(g), 1))
    for letter in word:
        if not 0 <= letter < len(g):
            raise IndexError(f"letter {letter} is not a vertex of a {len(g)}-vertex graph")
        out = out @ gens[letter]
    return out


def retract(g: RacgGraph, a_set: Iterable[int], word: Sequence[int]) -> list[int]:
    """Delete every letter outside ``a_set`` (the generators sent to 1)."""
    keep = set(a_set)
    return [x for x in word if x in keep]


def retract_eval(g: RacgGraph, a_set: Iterable[int], word: Sequence[int]) -> Matrix:
    """Element of Gamma_A (in the Tits representation of the induced subgraph)."""
    keep = set(a_set)
    sub, relabel = g.induced(keep)
    return tits_eval(sub, [relabel[x] for x in retract(g, keep, word)])


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> RacgGraph:
    names = [chr(ord("a") + i) for i in range(n)]
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return RacgGraph.build(names, edges)


def insert_relation(g: RacgGraph, word: list[int], rng: random.Random) -> list[int]:
    """Insert ``rr`` or, for an edge ``rs``, ``rsrs`` at a random position."""
    pos = rng.randint(0, len(word))
    if g.edges and rng.random() < 0.5:
        i, j = sorted(rng.choice(sorted(sorted(e) for e in g.edges)))
        rel = [i, j, i, j]
    else:
        r = rng.randrange(len(g))
        rel = [r, r]
    return word[:pos] + rel + word[pos:]


# -- the free-group witness inside PSL(2, Z) -------------------------------------------

_S = ((0, -1), (1, 0))
_T = ((1, 1), (0, 1))
_Tinv = ((1, -1), (0, 1))


def _mul2(x, y):
    return ((x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
            (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]))


def _psl(x):
    neg = tuple(tuple(-v for v in row) for row in x)
    return min(x, neg)


def _level2_integer(x) -> bool:
    (a, b), (c, d) = x
    return b % 2 == 0 and c % 2 == 0 and a % 2 == 1 and d % 2 == 1


def _embed(m: int, x) -> Mat2O:
    (a, b), (c, d) = x
    return Mat2O.from_coords(m, ((a, 0), (b, 0), (c, 0), (d, 0)))


def free_retraction_witness(m: int, max_len: int = 10) -> Certificate:
    """Delta_m meets PSL(2, Z) exactly in its level-2 subgroup <T^2, L^2>.

    All PSL(2, Z) elements reachable by words of length <= max_len in
    S, T, T^-1 are enumerated and both membership tests compared.
    """
    require_squarefree(m)
    t2 = ((1, 2), (0, 1))
    l2 = ((1, 0), (2, 1))
    gen_checks = []
    for name, x in (("[[1,2],[0,1]]", t2), ("[[1,0],[2,1]]", l2)):
        gen_checks.append({"word": name, "in_delta": in_delta_m(_embed(m, x))})

    ident = ((1, 0), (0, 1))
    seen = {ident}
    frontier = [ident]
    for _ in range(max_len):
        nxt = []
        for x in frontier:
            for g in (_S, _T, _Tinv):
                y = _psl(_mul2(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    mismatches = []
    level2 = 0
    for x in seen:
        lvl = _level2_integer(x)
        level2 += lvl
        if in_delta_m(_embed(m, x)) != lvl:
            mismatches.append([list(r) for r in x])
    passed = all(c["in_delta"] for c in gen_checks) and not mismatches
    return Certificate(
        claim="free-retraction",
        m=m,
        foursquare=None,
        checks=gen_checks,
        index=None,
        passed=passed,
        summary={
            "max_word_length": max_len,
            "elements_enumerated": len(seen),
            "level2_elements": level2,
            "mismatches": mismatches[:10],
            "claims": {"intersection_equals_level2": not mismatches,
                       "generators_in_delta": all(c["in_delta"] for c in gen_checks)},
        },
    )
