"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 mathematical precondition
failed, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .diagram_families import FAMILY_CASES, FamilySpec, build, closed_form
from .errors import DiagramFormatError, MathPreconditionError, AtlasError
from .hopf_atlas import canonical_case, classify
from .slope_calculus import count_trace, honda_count, ncf_eval, ncf_expand
from .surgery_diagram import d3_invariant, dumps_diagram, homology_order, loads_diagram, rot_rational, tb_rational
from .verification import build_report, failed_items, rational_json

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _q(v) -> str:
    return str(Fraction(v))


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def cmd_invariants(args) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    D = loads_diagram(text)
    comps = []
    for c in D.components:
        comps.append({"name": c.name, "tb_q": tb_rational(D, c), "rot_q": rot_rational(D, c)})
    b = d3_invariant(D)
    if args.json:
        out = {
            "homology_order": homology_order(D),
            "components": [{"name": c["name"], "tb_q": rational_json(c["tb_q"]), "rot_q": rational_json(c["rot_q"])}
                           for c in comps],
            "d3": {"c_squared": rational_json(b.c_squared), "sigma": b.sigma, "chi": b.chi, "q": b.q,
                   "d3": rational_json(b.d3), "unchecked_hypothesis": b.unchecked_hypothesis},
        }
        print(_dump(out))
        return EXIT_OK
    print(f"homology order: {homology_order(D)}")
    for c in comps:
        print(f"{c['name']}: tb_Q = {_q(c['tb_q'])}, rot_Q = {_q(c['rot_q'])}")
    print(f"d3 = {_q(b.d3)}  (c^2 = {_q(b.c_squared)}, sigma = {b.sigma}, chi = {b.chi}, q = {b.q})")
    if b.unchecked_hypothesis:
        print("warning: d3 assumes the Chern class is torsion; this is not checked for user diagrams")
    return EXIT_OK


def cmd_count(args) -> int:
    tr = count_trace(args.p, args.t0, args.t1)
    if args.trace:
        print(f"s0 = {tuple(tr.s0)} (slope {tr.s0}), s1 = {tuple(tr.s1)} (slope {tr.s1})")
        if tr.matrix is None:
            print("boundary slopes coincide; s1' = -1")
        else:
            print(f"A = {[list(r) for r in tr.matrix.rows()]}, A s0 = {tr.matrix.apply(tr.s0)}, A s1 = {tr.matrix.apply(tr.s1)}")
            print(f"s1' = {tr.normalized}")
        print(f"expansion = {tr.expansion}")
    print(f"N = {tr.count}")
    return EXIT_OK


def _realization_json(x) -> dict[str, Any]:
    return {
        "case": x.case_tag, "p": x.p, "t0": x.t0, "t1": x.t1,
        "tbq0": rational_json(x.tbq0), "rotq0": rational_json(x.rotq0),
        "tbq1": rational_json(x.tbq1), "rotq1": rational_json(x.rotq1),
        "d3": rational_json(x.d3), "ambient": x.ambient,
        "loose0": x.loose0, "loose1": x.loose1,
        "r": x.r, "r0": x.r0, "r1": x.r1, "variant": x.variant,
    }


def cmd_classify(args) -> int:
    rows = classify(args.p, args.t0, args.t1)
    if args.json:
        print(_dump([_realization_json(x) for x in rows]))
        return EXIT_OK
    tag, swapped = canonical_case(args.t0, args.t1)
    print(f"case {tag}{' (components swapped)' if swapped else ''}: {len(rows)} realisation(s)")
    header = ("tbQ(L0)", "rotQ(L0)", "tbQ(L1)", "rotQ(L1)", "d3", "ambient", "L0", "L1")
    table = [header]
    for x in rows:
        table.append((
            _q(x.tbq0), _q(x.rotq0), _q(x.tbq1), _q(x.rotq1), _q(x.d3), x.ambient,
            "loose" if x.loose0 else "exceptional" if x.ambient == "overtwisted" else "-",
            "loose" if x.loose1 else "exceptional" if x.ambient == "overtwisted" else "-",
        ))
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    for row in table:
        print("  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip())
    return EXIT_OK


def cmd_family(args) -> int:
    fields = ("t0", "t1", "k", "l", "k0", "l0", "k1", "l1", "r", "r0", "variant")
    spec = FamilySpec(args.case, args.p, **{f: getattr(args, f) for f in fields})
    fd = build(spec)
    got = fd.invariants()
    want = closed_form(spec).invariants()
    if args.emit:
        Path(args.emit).write_text(dumps_diagram(fd.diagram))
    names = ("tbQ(L0)", "rotQ(L0)", "tbQ(L1)", "rotQ(L1)", "d3")
    if args.json:
        print(_dump({
            "spec": {k: v for k, v in vars(spec).items() if v is not None},
            "homology_order": homology_order(fd.diagram),
            "rational_linking": rational_json(fd.rational_linking()),
            "positive": fd.positive,
            "computed": [rational_json(v) for v in got],
            "expected": [rational_json(v) for v in want],
            "match": got == want,
        }))
    else:
        print(f"{len(fd.diagram.knots)} surgery knots, homology order {homology_order(fd.diagram)}, "
              f"lk_Q(L0, L1) = {_q(fd.rational_linking())}")
        for name, g, w in zip(names, got, want):
            print(f"{name:>9} = {_q(g):>8}   expected {_q(w)}")
    return EXIT_OK if got == want else EXIT_MISMATCH


def cmd_verify(args) -> int:
    report = build_report(args.p_min, args.p_max, args.t_max, args.case)
    if args.json:
        print(_dump(report))
    else:
        g = report["grid"]
        print(f"grid: p in [{g['p_min']}, {g['p_max']}], |t| <= {g['t_max']}"
              + (f", case {g['case']}" if g["case"] else ""))
        for name, s in report["summary"].items():
            print(f"{name}: {s['total'] - s['failed']}/{s['total']} passed")
        for name, item in failed_items(report):
            print(f"FAIL {name}: {_dump(item)}")
        for note in report["notes"]:
            print(f"note: {note}")
    return EXIT_OK if report["ok"] else EXIT_MISMATCH


def cmd_ncf(args) -> int:
    try:
        q = Fraction(args.rational)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {args.rational!r}") from None
    e = ncf_expand(q)
    assert ncf_eval(e) == q
    print(f"{e}, N={honda_count(e)}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hopfatlas", description="Legendrian Hopf links in L(p,1): invariants, counts and checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("invariants", help="tb_Q, rot_Q and d3 of a surgery diagram file")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("count", help="number of tight minimally twisting structures on the link complement")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("--t0", type=int, required=True)
    s.add_argument("--t1", type=int, required=True)
    s.add_argument("--trace", action="store_true", help="show the normalisation and expansion")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("classify", help="list the Legendrian realisations")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("--t0", type=int, required=True)
    s.add_argument("--t1", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("family", help="build one diagram of a family and compare with the closed form")
    s.add_argument("case", choices=FAMILY_CASES)
    s.add_argument("-p", type=int, required=True)
    for name in ("t0", "t1", "k", "l", "k0", "l0", "k1", "l1", "r", "r0"):
        s.add_argument(f"--{name}", type=int)
    s.add_argument("--variant")
    s.add_argument("--emit", metavar="FILE", help="write the diagram in the JSON file format")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("verify", help="run the consistency checks over a grid")
    s.add_argument("--p-min", type=int, default=2)
    s.add_argument("--p-max", type=int, default=6)
    s.add_argument("--t-max", type=int, default=3)
    s.add_argument("--case")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("ncf", help="negative continued fraction of a rational <= -1 (use: ncf -- -5/2)")
    s.add_argument("rational")
    s.set_defaults(func=cmd_ncf)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except DiagramFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MathPreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except AtlasError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
