"""Command-line entry point: ``bianchi-special <command> ...``.

Every command exits 0 exactly when what it checked holds.  ``--format json``
output depends only on the flags, so equal seeds give equal bytes.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .certificate import Certificate
from .cocompact import certify_cocompact, is_prime
from .embed import certify_family
from .finite import (THEOREM_INDEX, delta_image, enumerate_psl, fig8_report, index_formula,
                     splitting_type)
from .quadform import is_squarefree
from .racg import RacgGraph, retract

BUDGET_ENV = "BIANCHI_BUDGET"
MAX_BUDGET = 10_000


def _budget(text: str) -> int:
    n = int(text)
    if not 0 <= n <= MAX_BUDGET:
        raise argparse.ArgumentTypeError(f"budget must be in 0..{MAX_BUDGET}")
    return n


def _default_budget(fallback: int) -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return fallback
    try:
        return _budget(raw)
    except (ValueError, argparse.ArgumentTypeError):
        return fallback


def _emit(args, payload: dict, text: str) -> None:
    out = json.dumps(payload, indent=2, sort_keys=True) if args.format == "json" else text
    if args.out:
        Path(args.out).write_text(out + "\n")
    else:
        print(out)


def _cert_text(cert: Certificate, extra: list[str]) -> str:
    lines = [f"claim      {cert.claim}", f"m          {cert.m}"]
    if cert.foursquare:
        lines.append(f"foursquare {cert.foursquare}")
    lines += extra
    lines.append(f"samples    {len(cert.checks)} checked")
    lines.append("result     " + ("PASS" if cert.passed else f"FAIL ({cert.first_failure()})"))
    return "\n".join(lines)


# -- commands -------------------------------------------------------------------

def cmd_certify(args, parser) -> int:
    if not is_squarefree(args.m):
        parser.error(f"m={args.m} is not square-free")
    cert = certify_family(args.m, sample_budget=args.budget, seed=args.seed)
    idx = cert.summary["indices"]
    extra = [
        f"splitting  2 is {idx['splitting_of_2']} in O_{args.m}",
        f"index      [PSL(2,O_m) : Delta_m] = {cert.index} (expected {idx['delta_index_expected']})",
    ]
    _emit(args, cert.to_dict(), _cert_text(cert, extra))
    if not cert.passed:
        print(f"first failed check: {cert.first_failure()}", file=sys.stderr)
    return 0 if cert.passed else 1


def _index_row(m: int, level: str) -> dict:
    if level == "delta":
        enumerated = enumerate_psl(m, 2).order // delta_image(m).order
        expected = THEOREM_INDEX[splitting_type(m)]
    else:
        k = {"2": 1, "4": 2}[level]
        enumerated = enumerate_psl(m, k).order
        expected = index_formula(m, int(level))
    return {"m": m, "level": level, "formula": expected, "enumerated": enumerated,
            "match": expected == enumerated, "pass": expected == enumerated}


def cmd_index(args, parser) -> int:
    if not is_squarefree(args.m):
        parser.error(f"m={args.m} is not square-free")
    row = _index_row(args.m, args.level)
    text = (f"{'m':>4} {'level':>6} {'formula':>8} {'enumerated':>11} match\n"
            f"{row['m']:>4} {row['level']:>6} {row['formula']:>8} {row['enumerated']:>11} "
            f"{'yes' if row['match'] else 'NO'}")
    _emit(args, row, text)
    return 0 if row["match"] else 1


def cmd_fig8(args, parser) -> int:
    rep = fig8_report()
    rep["pass"] = rep["index"] == 20
    text = "\n".join([
        f"|PSL(2, O_3/4)|                      {rep['psl_order_mod4']}",
        f"|image of Gamma_8 mod 4|              {rep['fig8_image_order']}",
        f"|image of Delta_3 mod 4|              {rep['delta3_image_order']}",
        f"|intersection|                        {rep['intersection_order']}",
        f"[Gamma_8 : Gamma_8 cap Delta_3]       {rep['index']}",
    ])
    _emit(args, rep, text)
    return 0 if rep["pass"] else 1


def cmd_cocompact(args, parser) -> int:
    if not (is_prime(args.m) and args.m % 8 == 7):
        parser.error(f"m={args.m} must be a prime congruent to 7 mod 8")
    cert = certify_cocompact(args.m, sample_budget=args.budget, seed=args.seed)
    extra = []
    if "delta7_mod2_order" in cert.summary:
        extra.append(f"order      Delta^7 mod 2 has order {cert.summary['delta7_mod2_order']}")
        extra.append(f"index      [Gamma : special subgroup] = "
                     f"{cert.summary['gamma_special_index']} (uses the quoted [Gamma : Delta^7] = 3)")
    else:
        extra.append(f"order      generators mod 2 have order {cert.summary['generator_mod2_order']}")
    _emit(args, cert.to_dict(), _cert_text(cert, extra))
    if not cert.passed:
        print(f"first failed check: {cert.first_failure()}", file=sys.stderr)
    return 0 if cert.passed else 1


def cmd_racg(args, parser) -> int:
    try:
        g = RacgGraph.from_json(Path(args.graph).read_text())
        keep = [g.index(v) for v in args.keep.split(",") if v]
        words = [g.parse_word(w) for w in args.words]
    except (OSError, KeyError, ValueError) as exc:
        parser.error(str(exc))
    rows = [{"word": g.format_word(w), "retract": g.format_word(retract(g, keep, w))}
            for w in words]
    payload = {"graph": json.loads(g.to_json()), "keep": [g.vertices[i] for i in keep],
               "results": rows, "pass": True}
    text = "\n".join(f"{r['word'] or '()'} -> {r['retract'] or '()'}" for r in rows)
    _emit(args, payload, text)
    return 0


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bianchi-special",
                                description="Certify special subgroups of Bianchi groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, budget: int | None = None):
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--format", choices=["text", "json"], default="text")
        if budget is not None:
            sp.add_argument("--budget", type=_budget, default=_default_budget(budget),
                            help=f"number of sampled elements (env {BUDGET_ENV})")
            sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("certify", help="certify the embedding of Delta_m")
    sp.add_argument("--m", type=int, required=True)
    common(sp, budget=50)
    sp.set_defaults(func=cmd_certify, parser=sp)

    sp = sub.add_parser("index", help="index of a congruence subgroup, formula vs enumeration")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--level", choices=["2", "4", "delta"], default="2")
    common(sp)
    sp.set_defaults(func=cmd_index, parser=sp)

    sp = sub.add_parser("fig8", help="degree of the special cover of the figure-eight knot")
    common(sp)
    sp.set_defaults(func=cmd_fig8, parser=sp)

    sp = sub.add_parser("cocompact", help="certify the cocompact family at a prime m = 7 mod 8")
    sp.add_argument("--m", type=int, default=7)
    common(sp, budget=25)
    sp.set_defaults(func=cmd_cocompact, parser=sp)

    sp = sub.add_parser("racg", help="retract RACG words onto a vertex subset")
    sp.add_argument("--graph", required=True, help="JSON file {vertices: [...], edges: [[i, j]]}")
    sp.add_argument("--keep", required=True, help="comma-separated vertex names to keep")
    sp.add_argument("words", nargs="*")
    common(sp)
    sp.set_defaults(func=cmd_racg, parser=sp)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, args.parser)


if __name__ == "__main__":
    sys.exit(main())
