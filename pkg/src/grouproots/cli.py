"""Command-line front door.

Subcommands: ``prob`` (probabilities for one group), ``verify`` (the check
suite over a catalog), ``psl`` (closed form vs. enumeration on PSL(2,q)),
``density`` (target-approximation traces).  stdout carries only the report;
diagnostics go to stderr.  Exit codes: 0 success / all checks pass,
1 verification failure, 2 input error, 3 resource cap.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .catalog import BUILTIN_CATALOG
from .density import density_trace, realize_trace
from .errors import (
    CapExceeded,
    InvalidTarget,
    NonPrime,
    NotAPrimePower,
    ParseError,
    SemanticError,
)
from .gspec import realize
from .groups import default_cap
from .psl2 import psl2_scan, distinguished_classes
from .fields import field_new
from .roots import VerifyBudget, power_image, root_order_check, verify_suite
from .util import is_prime

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_CAP = 3

_INPUT_ERRORS = (ParseError, SemanticError, NotAPrimePower, InvalidTarget, NonPrime, ValueError)


def _stderr(level, message):
    """Diagnostics stay off stdout; stdout carries only the report."""
    sys.stderr.write(f"{level}: {message}\n")


def _fraction(text):
    """Exact rational from 'NUM/DEN' or a bare integer; no floats anywhere."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def _int_list(text):
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _r_range(text):
    lo, _, hi = text.partition("..")
    if not _:
        raise ValueError(f"expected LO..HI, got {text!r}")
    lo, hi = int(lo), int(hi)
    if lo < 2 or hi < lo:
        raise ValueError(f"bad exponent range {text!r}")
    return range(lo, hi + 1)


def _prob_doc(fr: Fraction):
    return {"num": fr.numerator, "den": fr.denominator, "decimal": float(fr)}


def _report(command, argv, items, summary):
    return {
        "command": command,
        "argv": list(argv),
        "version": __version__,
        "items": items,
        "summary": summary,
    }


def _emit_json(doc):
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# prob
# ---------------------------------------------------------------------------

def cmd_prob(args):
    cap = args.cap if args.cap is not None else default_cap()
    g = realize(args.group, cap=cap)
    items = []
    for r in args.r:
        if r < 2:
            raise ValueError(f"--r values must be >= 2, got {r}")
        img = power_image(g, r)
        prob = Fraction(img.image_size, g.order)
        items.append(
            {
                "group": args.group,
                "order": g.order,
                "r": r,
                "image_size": img.image_size,
                "prob": _prob_doc(prob),
            }
        )
    ok = True
    summary = {"items": len(items), "ok": ok}
    if args.json:
        _emit_json(_report("prob", args.argv_echo, items, summary))
    elif args.csv:
        sys.stdout.write("group,order,r,image_size,prob_num,prob_den,prob_decimal\n")
        for it in items:
            p = it["prob"]
            sys.stdout.write(
                f"{it['group']},{it['order']},{it['r']},{it['image_size']},"
                f"{p['num']},{p['den']},{p['decimal']}\n"
            )
    else:
        for it in items:
            p = it["prob"]
            sys.stdout.write(
                f"{it['group']}  order={it['order']}  r={it['r']}  "
                f"|G^r|={it['image_size']}  prob={p['num']}/{p['den']}  ({p['decimal']:.6g})\n"
            )
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _catalog_entries(spec):
    if spec == "builtin":
        return list(BUILTIN_CATALOG)
    with open(spec, "r", encoding="utf-8") as fh:
        entries = [line.strip() for line in fh]
    return [e for e in entries if e and not e.startswith("#")]


def cmd_verify(args):
    if args.list_catalog:
        for entry in BUILTIN_CATALOG:
            sys.stdout.write(entry + "\n")
        return EXIT_OK
    cap = args.cap if args.cap is not None else default_cap()
    entries = _catalog_entries(args.catalog)
    if not entries:
        _stderr("WARNING", "catalog is empty; nothing to verify")
    budget = VerifyBudget()
    items = []
    total = failed_checks = degenerate = 0
    for entry in entries:
        g = realize(entry, cap=cap)
        for r in args.r_range:
            rep = verify_suite(g, r, budget)
            if is_prime(r):
                rep.extend(root_order_check(g, r))
            fails = rep.failures()
            total += len(rep.checks)
            failed_checks += len(fails)
            degenerate += len(rep.degenerate())
            items.append(
                {
                    "group": entry,
                    "order": g.order,
                    "r": r,
                    "checks": len(rep.checks),
                    "tags": rep.tag_counts(),
                    "degenerate": len(rep.degenerate()),
                    "failures": [
                        {
                            "tag": c.tag,
                            "instance": c.instance,
                            "witness_ids": list(c.witness_ids),
                            "witnesses": [g.label(w) for w in c.witness_ids],
                        }
                        for c in fails
                    ],
                }
            )
    ok = failed_checks == 0
    summary = {
        "groups": len(entries),
        "checks": total,
        "failed": failed_checks,
        "degenerate": degenerate,
        "ok": ok,
    }
    if args.json:
        _emit_json(_report("verify", args.argv_echo, items, summary))
    else:
        for it in items:
            status = "ok" if not it["failures"] else f"FAILED({len(it['failures'])})"
            sys.stdout.write(
                f"{it['group']:<16} r={it['r']:<3} checks={it['checks']:<4} {status}\n"
            )
            for f in it["failures"]:
                sys.stdout.write(f"    {f['tag']}: {f['instance']} witnesses={f['witnesses']}\n")
        sys.stdout.write(
            f"total: {total} checks over {len(entries)} groups, "
            f"{failed_checks} failed, {degenerate} hypothesis-degenerate\n"
        )
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# psl
# ---------------------------------------------------------------------------

def cmd_psl(args):
    cap = args.cap if args.cap is not None else default_cap()
    rows = psl2_scan(args.q, args.r, cap=cap)
    items = []
    for row in rows:
        items.append(
            {
                "q": row.q,
                "r": row.r,
                "order": row.order,
                "formula": _prob_doc(row.formula),
                "hypothesis_ok": row.hypothesis_ok,
                "enumerated": _prob_doc(row.enumerated) if row.enumerated is not None else None,
                "agree": row.agree,
                "note": row.note,
            }
        )
    classes = {}
    if args.classes:
        for q in sorted(set(args.q)):
            if q % 2 == 0:
                classes[str(q)] = {"note": "characteristic 2: no class-range claims"}
                continue
            data = distinguished_classes(field_new(q))
            classes[str(q)] = {
                "names": data.names,
                "rep_ids": data.rep_ids,
                "measured_centralizer_orders": data.measured,
                "expected_centralizer_orders": data.expected,
                "distinct_classes": data.distinct_classes,
                "class_equation_ok": data.class_equation_ok,
            }
    summary = {
        "cells": len(items),
        "agree": sum(1 for it in items if it["agree"]),
        "hypothesis_ok": sum(1 for it in items if it["hypothesis_ok"]),
        "skipped": sum(1 for it in items if it["enumerated"] is None),
        "ok": True,
    }
    if args.json:
        doc = _report("psl", args.argv_echo, items, summary)
        if args.classes:
            doc["classes"] = classes
        _emit_json(doc)
    else:
        for it in items:
            f, e = it["formula"], it["enumerated"]
            enum_txt = f"{e['num']}/{e['den']}" if e else f"skipped: {it['note']}"
            sys.stdout.write(
                f"q={it['q']:<3} r={it['r']:<3} formula={f['num']}/{f['den']:<5} "
                f"enumerated={enum_txt:<12} agree={it['agree']} "
                f"hypothesis_ok={it['hypothesis_ok']}\n"
            )
        for q, data in classes.items():
            sys.stdout.write(f"classes q={q}:\n")
            if "note" in data:
                sys.stdout.write(f"    {data['note']}\n")
                continue
            for name, rep, meas, exp in zip(
                data["names"], data["rep_ids"],
                data["measured_centralizer_orders"], data["expected_centralizer_orders"],
            ):
                sys.stdout.write(
                    f"    {name:<6} id={rep:<8} |C|={meas:<6} expected={exp}\n"
                )
            sys.stdout.write(
                f"    distinct_classes={data['distinct_classes']} "
                f"class_equation_ok={data['class_equation_ok']}\n"
            )
    return EXIT_OK


# ---------------------------------------------------------------------------
# density
# ---------------------------------------------------------------------------

def cmd_density(args):
    trace = density_trace(args.x, args.r, eps=args.eps, max_steps=args.max_steps)
    steps = [
        {
            "n": s.n,
            "lower": _prob_doc(s.lower),
            "factor": _prob_doc(s.factor),
            "predicted": _prob_doc(s.predicted),
            "exact_hit": s.exact_hit,
        }
        for s in trace.steps
    ]
    item = {
        "x": _prob_doc(trace.x),
        "r": trace.r,
        "eps": _prob_doc(trace.eps),
        "m": trace.m,
        "descriptor": trace.descriptor,
        "steps": steps,
        "predicted": _prob_doc(trace.predicted),
        "error": _prob_doc(trace.error),
        "converged": trace.converged,
        "exact": trace.exact,
    }
    if args.realize:
        if trace.r != 2:
            raise ValueError("--realize needs --r 2 (only rank 1 and 2 have concrete groups)")
        cap = args.cap if args.cap is not None else default_cap()
        item["realized"] = [
            {
                "steps_used": p.steps_used,
                "group": p.group_name,
                "order": p.order,
                "predicted": _prob_doc(p.predicted),
                "enumerated": _prob_doc(p.enumerated),
                "match": p.match,
            }
            for p in realize_trace(trace, cap=cap)
        ]
    summary = {"converged": trace.converged, "exact": trace.exact, "ok": True}
    if args.json:
        _emit_json(_report("density", args.argv_echo, [item], summary))
    else:
        sys.stdout.write(
            f"x={trace.x}  r={trace.r}  m={trace.m}  descriptor={trace.descriptor}\n"
        )
        for k, s in enumerate(trace.steps, 1):
            sys.stdout.write(
                f"  step {k}: n={s.n}  factor={s.factor}  predicted={s.predicted}"
                f"{'  (exact)' if s.exact_hit else ''}\n"
            )
        sys.stdout.write(
            f"predicted={trace.predicted}  error={trace.error}  "
            f"converged={trace.converged}  exact={trace.exact}\n"
        )
        for p in item.get("realized", []):
            sys.stdout.write(
                f"  realized[{p['steps_used']}] {p['group']} order={p['order']} "
                f"enumerated={p['enumerated']['num']}/{p['enumerated']['den']} "
                f"match={p['match']}\n"
            )
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

_DSL_HELP = """\
group description language:
  spec    := term ( "x" term )*
  term    := family ( "^" INT )?
  family  := "C" INT | "S" INT | "A" INT | "D" INT | "Q8"
           | "PSL(2," INT ")" | "SL(2," INT ")" | "GL(2," INT ")"
           | "Perm[" cycles ("," cycles)* "]"
  cycles  := ( "(" INT (" " INT)* ")" )+
conventions: "Dn" is the dihedral group of order 2n; permutation points are
1-based with ambient degree the largest point mentioned; "^" repeats any
term (binds tighter than the direct product "x").
"""


def build_parser():
    top = argparse.ArgumentParser(
        prog="grouproots",
        description="Exact r-th root probabilities in finite groups.",
        epilog=_DSL_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    top.add_argument("--version", action="version", version=f"grouproots {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prob", help="probability that a random element has an r-th root")
    p.add_argument("--group", required=True, help='group description, e.g. "C2^3 x S4"')
    p.add_argument("--r", required=True, type=_int_list, help="exponent(s), e.g. 2 or 2,3,4")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.add_argument("--cap", type=int, default=None, help="element cap (default RADICALITY_CAP or 200000)")
    p.set_defaults(func=cmd_prob)

    v = sub.add_parser("verify", help="run the full check suite over a catalog")
    v.add_argument("--catalog", default="builtin", help="'builtin' or a file of group descriptions")
    v.add_argument("--r-range", dest="r_range", type=_r_range, default=range(2, 13),
                   help="exponent range LO..HI (default 2..12)")
    v.add_argument("--json", action="store_true")
    v.add_argument("--list-catalog", action="store_true", help="print the builtin catalog and exit")
    v.add_argument("--cap", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    q = sub.add_parser("psl", help="closed form vs enumeration for PSL(2,q)")
    q.add_argument("--q", required=True, type=_int_list, help="prime power(s) <= 61")
    q.add_argument("--r", required=True, type=_int_list)
    q.add_argument("--scan", action="store_true",
                   help="accepted for symmetry; the full q x r grid is always scanned")
    q.add_argument("--classes", action="store_true",
                   help="include measured vs expected centralizer orders per q")
    q.add_argument("--json", action="store_true")
    q.add_argument("--cap", type=int, default=None)
    q.set_defaults(func=cmd_psl)

    d = sub.add_parser("density", help="iterate achievable probabilities toward a target")
    d.add_argument("--x", required=True, type=_fraction, help="target rational NUM/DEN in (0,1)")
    d.add_argument("--r", required=True, type=int, help="prime factor-family exponent")
    d.add_argument("--eps", type=_fraction, default=Fraction(1, 10_000))
    d.add_argument("--max-steps", dest="max_steps", type=int, default=64)
    d.add_argument("--realize", action="store_true",
                   help="r=2: build C2/PSL(2,5) products for realizable prefixes")
    d.add_argument("--json", action="store_true")
    d.add_argument("--cap", type=int, default=None)
    d.set_defaults(func=cmd_density)
    return top


def main(argv=None) -> int:
    argv = list(argv) if argv is not None else sys.argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports to stderr itself
        return EXIT_INPUT if exc.code not in (0, None) else 0
    args.argv_echo = argv
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        _stderr("ERROR", exc)
        return EXIT_INPUT
    except CapExceeded as exc:
        _stderr("ERROR", exc)
        return EXIT_CAP
    except OSError as exc:
        _stderr("ERROR", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
