"""Command-line front end: ``bowvar <command> DIAGRAM [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .brane import BraneDiagram, charges, format_diagram, hw_step, is_separated, parse_diagram, separate
from .butterfly import tangent_class_oracle
from .curves import classify_curves, skeleton, skeleton_to_dot
from .errors import BowvarError
from .fixedpoints import (
    FixedPointIndex,
    bct_to_ties,
    enumerate_fixed_points,
    margin_diagnostic,
    subset_label,
)
from .selftest import run_selftest
from .tangent import pair_count_from_margins, tangent_weights_general

EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_ORACLE = 3

DIAGRAM_HELP = r"""Diagrams are written left to right as brane symbols separated by
segment multiplicities: '/' is an NS5 brane and '\' a D5 brane, for example
"/1/2/3/4/5\2\".  Because the backslash needs quoting in most shells, the
letters 's' (for '/') and 'b' (for '\') are accepted too: s1s2s3s4s5b2b.
Fixed points are numbered from 1 in lexicographic order of their tables."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse already exits 2; keep the message format uniform
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"bowvar: usage error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="bowvar",
        description="Fixed points, tangent weights and invariant curves of type A bow varieties.",
        epilog=DIAGRAM_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, help_: str, formats=("table", "json"), diagram=True):
        c = sub.add_parser(name, help=help_, epilog=DIAGRAM_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
        if diagram:
            c.add_argument("diagram", help="brane diagram, e.g. s1s2b1b")
        c.add_argument("--format", choices=formats, default="table")
        return c

    command("parse", "echo the canonical diagram and its charges")
    command("fixed-points", "list the fixed points")
    w = command("weights", "tangent weights at fixed points")
    w.add_argument("--fixed-point", default="all", metavar="K|all")
    w.add_argument("--oracle", action="store_true", help="cross-check against the brute-force expansion")
    c = command("curves", "classify the invariant curves through one fixed point")
    sel = c.add_mutually_exclusive_group(required=True)
    sel.add_argument("--fixed-point", type=int, metavar="K")
    sel.add_argument("--label", help='subset alias such as "13" (all row sums 1, two D5 branes)')
    command("skeleton", "the graph of fixed points and invariant curves", formats=("table", "json", "dot"))
    command("separate", "move every NS5 brane to the left")
    h = command("hw", "apply one brane transition")
    h.add_argument("--at", type=int, required=True, metavar="K", help="1-based position of the left brane of the pair")
    s = command("selftest", "run the invariant suites on a seeded random corpus", diagram=False)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-size", type=int, default=7, help="largest number of branes")
    s.add_argument("--count", type=int, default=60, help="number of random diagrams")
    return p


def _emit(data: object) -> None:
    print(json.dumps(data, indent=2, sort_keys=True))


def _tuple(xs) -> str:
    return "(" + ", ".join(map(str, xs)) + ")"


def _label(b) -> str:
    alias = subset_label(b)
    return "" if alias is None else alias


def cmd_parse(args, d: BraneDiagram) -> int:
    mg = charges(d)
    if args.format == "json":
        _emit({"diagram": format_diagram(d), "n": d.n, "m": d.m, "separated": is_separated(d), **mg.to_json()})
    else:
        print(format_diagram(d))
        print(f"r={_tuple(mg.r)} c={_tuple(mg.c)}")
    return 0


def cmd_fixed_points(args, d: BraneDiagram) -> int:
    mg = charges(d)
    diag = margin_diagnostic(mg)
    fps = enumerate_fixed_points(d)
    if args.format == "json":
        _emit(
            {
                "diagram": format_diagram(d),
                "count": len(fps),
                "warning": diag,
                "dimension": 2 * pair_count_from_margins(mg) if fps else None,
                "fixed_points": [
                    {"index": k, "label": subset_label(b), **b.to_json()} for k, b in enumerate(fps, start=1)
                ],
            }
        )
        return 0
    if diag:
        print(f"# {diag}")
    print(f"{len(fps)} fixed points")
    for k, b in enumerate(fps, start=1):
        rows = " ".join("".join(map(str, row)) for row in b.bits)
        alias = _label(b)
        print(f"{k:>4}  {rows}" + (f"  [{alias}]" if alias else ""))
    return 0


def _select(index: FixedPointIndex, selector: str) -> list[int]:
    if selector == "all":
        return list(range(1, len(index) + 1))
    try:
        k = int(selector)
    except ValueError:
        raise _UsageError(f"--fixed-point takes an index or 'all', not {selector!r}") from None
    index.get(k)
    return [k]


class _UsageError(Exception):
    pass


def cmd_weights(args, d: BraneDiagram) -> int:
    index = FixedPointIndex(enumerate_fixed_points(d))
    sigma = separate(d)[1].sigma
    rows = []
    mismatched = []
    for k in _select(index, args.fixed_point):
        b = index.get(k)
        ws = tangent_weights_general(b, sigma)
        entry = {"index": k, "weights": [str(w) for w in ws]}
        if args.oracle:
            ok = tangent_class_oracle(bct_to_ties(b, d)) == ws
            entry["oracle"] = "match" if ok else "mismatch"
            if not ok:
                mismatched.append(k)
        rows.append(entry)
    if args.format == "json":
        _emit({"diagram": format_diagram(d), "sigma": list(sigma), "fixed_points": rows})
    else:
        for entry in rows:
            tail = f"  oracle: {entry['oracle']}" if args.oracle else ""
            print(f"fixed point {entry['index']}: {len(entry['weights'])} weights{tail}")
            for w in entry["weights"]:
                print(f"  {w}")
    if mismatched:
        print(f"bowvar: oracle mismatch at fixed points {mismatched}", file=sys.stderr)
        return EXIT_ORACLE
    return 0


def cmd_curves(args, d: BraneDiagram) -> int:
    sep, trace = separate(d)
    sigma = trace.sigma
    index = FixedPointIndex(enumerate_fixed_points(sep))
    k = args.fixed_point if args.label is None else index.by_label(args.label)
    rep = classify_curves(index.get(k), sep, index)
    if args.format == "json":
        data = rep.to_json()
        # pencils are listed in sorted weight order
        for pencil, w in zip(data["pencils"], sorted(rep.by_weight)):
            pencil["weight_original"] = w.reparametrize(sigma).to_json()
        _emit({"diagram": format_diagram(d), "fixed_point": k, "sigma": list(sigma), **data})
        return 0
    print(f"fixed point {k}" + (f" [{_label(rep.bct)}]" if _label(rep.bct) else ""))
    for w, members in sorted(rep.by_weight.items()):
        kinds = "+".join(c.curve_type.value for c in members)
        print(f"  {w.reparametrize(sigma)}: dim {len(members)} ({kinds})")
        for c in members:
            if c.surgery is not None:
                s = c.surgery
                where = f" -> {c.endpoint}" if c.endpoint is not None else ""
                print(f"    {c.curve_type.value}: column {s.source} to {s.target}, {len(s.site)} boxes, shift {s.shift}{where}")
            else:
                print(f"    {c.curve_type.value}: no surgery")
    for bl in rep.blocked:
        i, a, c = bl.pair
        print(
            f"  blocked: row {i}, column {a} to {c}: {bl.surgery.right_col_boxes} rightmost boxes, needs {bl.required}"
        )
    return 0


def cmd_skeleton(args, d: BraneDiagram) -> int:
    sk = skeleton(d)
    if args.format == "dot":
        sys.stdout.write(skeleton_to_dot(sk))
    elif args.format == "json":
        _emit(sk.to_json())
    else:
        print(f"{len(sk.fixed_points)} fixed points, {len(sk.edges)} compact pencils, {len(sk.rays)} noncompact pencils")
        for e in sk.edges:
            print(f"  {e.p1} -- {e.p2}  dim {e.dim}  {e.w1}")
        for r in sk.rays:
            print(f"  {r.p} ray  dim {r.dim}  {r.w}  ({'+'.join(r.types)})")
    return 0


def cmd_separate(args, d: BraneDiagram) -> int:
    sep, trace = separate(d)
    if args.format == "json":
        _emit({"diagram": format_diagram(d), "separated": format_diagram(sep), **trace.to_json()})
    else:
        print(format_diagram(sep))
        print(f"sigma={_tuple(trace.sigma)}")
    return 0


def cmd_hw(args, d: BraneDiagram) -> int:
    out = hw_step(d, args.at)
    if args.format == "json":
        _emit({"diagram": format_diagram(d), "position": args.at, "result": format_diagram(out)})
    else:
        print(format_diagram(out))
    return 0


def cmd_selftest(args) -> int:
    if args.max_size < 2 or args.count < 1:
        raise _UsageError("--max-size must be at least 2 and --count at least 1")
    results = run_selftest(args.seed, args.max_size, args.count)
    if args.format == "json":
        _emit([{"suite": r.name, "passed": r.passed, "total": r.total, "failures": r.failures} for r in results])
    else:
        for r in results:
            print(f"{r.name:<12} {r.passed}/{r.total}")
            for f in r.failures[:5]:
                print(f"    {f}")
    return 0 if all(r.passed == r.total for r in results) else EXIT_DOMAIN


COMMANDS = {
    "parse": cmd_parse,
    "fixed-points": cmd_fixed_points,
    "weights": cmd_weights,
    "curves": cmd_curves,
    "skeleton": cmd_skeleton,
    "separate": cmd_separate,
    "hw": cmd_hw,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "selftest":
            return cmd_selftest(args)
        d = parse_diagram(args.diagram)
        return COMMANDS[args.command](args, d)
    except _UsageError as exc:
        print(f"bowvar: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BowvarError as exc:
        print(f"bowvar: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
