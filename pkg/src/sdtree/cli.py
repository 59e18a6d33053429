"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 argument error,
3 evaluation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import enumeration as E
from . import generate as G
from . import oeis
from .core import ParseError, canonical_labeled, canonical_shape, parse, parse_shape, s_node_count
from .floateval import Binding, EvaluationError, eval_tree, parse_binding, survey
from .ieee import Overflow

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_EVAL = 0, 1, 2, 3

TABLE_CAP = 40


class UsageError(Exception):
    pass


def _emit_records(records, fmt, out, columns=None):
    """Write a list of flat dicts as table, csv or json."""
    if fmt == "json":
        out.write(json.dumps(records, indent=2) + "\n")
        return
    columns = columns or (list(records[0]) if records else [])
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        for r in records:
            w.writerow([r.get(c, "") for c in columns])
        return
    for r in records:
        out.write("  ".join(f"{c}={r[c]}" for c in columns if c in r) + "\n")


# ---------------------------------------------------------------- count

def cmd_count(args, out):
    n, kind = args.n, args.kind
    if n is None:
        raise UsageError("count requires --n")
    if kind == "all":
        value = E.count_all(n)
    elif kind == "ladder":
        value = E.count_ladder(n)
    elif kind == "pairwise":
        value = E.sigma_pairwise(n, args.method or "epsilon_closed")
    elif kind == "alpha":
        value = E.alpha(n)
    elif kind == "tau":
        if args.s is None:
            raise UsageError("count tau requires --s")
        value = E.tau(n, args.s)
    elif kind == "beta":
        value = E.beta(n, args.method or "legendre")
    elif kind == "epsilon":
        value = E.epsilon(n, args.method or "recursive")
    elif kind == "catalan":
        value = E.catalan(n)
    else:  # argparse restricts choices
        raise UsageError(f"unknown kind {kind}")
    if args.format == "json":
        out.write(json.dumps({"kind": kind, "n": n, "s": args.s, "value": str(value)}) + "\n")
    else:
        out.write(f"{value}\n")
    return EXIT_OK


# ---------------------------------------------------------------- table

def table_rows(max_n: int) -> list:
    """Rows ``{"n", "tau": [tau(n,1), ..., tau(n,n-1)], "alpha"}``."""
    rows = []
    for n in range(1, max_n + 1):
        full = E.tau_row(n)
        cells = [full[s] if s < len(full) else 0 for s in range(1, n)]
        rows.append({"n": n, "tau": cells, "alpha": E.alpha(n)})
    return rows


def cmd_table(args, out):
    if not 1 <= args.max_n <= args.max_n_cap:
        raise UsageError(f"--max-n must be in 1..{args.max_n_cap}")
    rows = table_rows(args.max_n)
    width = args.max_n - 1
    if args.format == "json":
        out.write(json.dumps(rows, indent=1) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n"] + [f"s{s}" for s in range(1, width + 1)] + ["alpha"])
        for r in rows:
            w.writerow([r["n"]] + r["tau"] + [""] * (width - len(r["tau"])) + [r["alpha"]])
    else:
        cw = max(5, len(str(rows[-1]["alpha"])) + 1)
        out.write("n".rjust(3) + " |" + "".join(str(s).rjust(cw) for s in range(1, width + 1))
                  + " |" + "alpha".rjust(cw + 1) + "\n")
        out.write("-" * (5 + cw * width + cw + 3) + "\n")
        for r in rows:
            cells = "".join(str(c).rjust(cw) for c in r["tau"]) + " " * cw * (width - len(r["tau"]))
            out.write(str(r["n"]).rjust(3) + " |" + cells + " |" + str(r["alpha"]).rjust(cw + 1) + "\n")
    return EXIT_OK


def parse_table(text: str, fmt: str) -> list:
    """Read ``table`` output (csv or json) back into rows."""
    if fmt == "json":
        return json.loads(text)
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    rows = []
    for rec in reader:
        n = int(rec[0])
        rows.append({"n": n, "tau": [int(c) for c in rec[1:n]], "alpha": int(rec[-1])})
    assert header[0] == "n" and header[-1] == "alpha"
    return rows


# ---------------------------------------------------------------- check-oeis

def cmd_check_oeis(args, out):
    path = args.fixture
    if path is None:
        path = oeis.bundled_fixture(args.sequence)
    try:
        bfile = oeis.load_bfile(path)
    except OSError as e:
        raise UsageError(f"cannot read fixture: {e}") from None
    except oeis.FixtureError as e:
        raise UsageError(f"malformed fixture {path}: {e}") from None
    res = oeis.check(args.sequence, bfile, args.max_terms)
    record = {"sequence": res.sequence, "checked": res.checked, "skipped": res.skipped,
              "status": "pass" if res.ok else "fail"}
    if not res.ok:
        i, expected, ours = res.mismatch
        record.update(index=i, expected=str(expected), ours=str(ours))
    _emit_records([record], args.format, out)
    return EXIT_OK if res.ok else EXIT_CHECK


# ---------------------------------------------------------------- enumerate

def _labels(text, n):
    if text is None:
        from .core import default_labels

        return default_labels(n)
    labels = [x.strip() for x in text.split(",") if x.strip()]
    return [int(x) if x.isdigit() else x for x in labels]


def cmd_enumerate(args, out):
    if args.kind == "shapes":
        if args.n is None:
            raise UsageError("enumerate shapes requires --n")
        if args.n > min(args.max_n_cap, G.SHAPE_CAP):
            raise UsageError(f"--n exceeds the shape generation cap {min(args.max_n_cap, G.SHAPE_CAP)}")
        stream = G.shapes(args.n, args.s)
    else:
        if args.shape is not None:
            shape = parse_shape(args.shape)
            n = shape.leaf_count
            if args.n is not None and args.n != n:
                raise UsageError(f"--shape has {n} leaves but --n is {args.n}")
        elif args.n is not None:
            shape, n = None, args.n
        else:
            raise UsageError("enumerate classes requires --n or --shape")
        cap = min(args.max_n_cap, G.ORACLE_SHAPE_CAP if shape is not None else G.ORACLE_TOTAL_CAP)
        if n > cap:
            raise UsageError(f"class enumeration is capped at n={cap}")
        labels = _labels(args.labels, n)
        if len(labels) != n:
            raise UsageError(f"expected {n} labels, got {len(labels)}")
        stream = G.all_classes(n, labels) if shape is None else G.class_representatives(shape, labels)
    if args.count_only:
        count = sum(1 for _ in stream)
        out.write(json.dumps({"count": count}) + "\n" if args.format == "json" else f"{count}\n")
        return EXIT_OK
    if args.format == "json":
        out.write(json.dumps([{"expression": t.text, "s_nodes": s_node_count(t)} for t in stream], indent=1) + "\n")
    elif args.format == "csv":
        out.write("expression,s_nodes\n")
        for t in stream:
            out.write(f"{t.text},{s_node_count(t)}\n")
    else:
        for t in stream:
            out.write(t.text + "\n")
    return EXIT_OK


# ---------------------------------------------------------------- eval / survey

def _binding(spec: str) -> Binding:
    p = Path(spec)
    if p.is_file():
        text = p.read_text()
    elif "=" in spec:
        text = spec.replace(";", "\n").replace(",", "\n")
    else:
        raise UsageError(f"--bind: no such file and not an inline binding: {spec!r}")
    try:
        return parse_binding(text)
    except ValueError as e:  # non-finite or malformed values
        raise EvaluationError(f"binding: {e}") from None


def cmd_eval(args, out):
    tree = parse(args.expr)
    binding = _binding(args.bind)
    report = eval_tree(tree, binding, args.precision)
    _emit_records([report.to_dict(args.hex)], args.format, out)
    return EXIT_OK


def cmd_survey(args, out):
    binding = _binding(args.bind)
    n = args.n if args.n is not None else len(binding)
    if n > args.max_n_cap:
        raise UsageError(f"--n exceeds --max-n-cap {args.max_n_cap}")
    report = survey(n, binding, args.precision, args.selector)
    d = report.to_dict(args.hex)
    if args.format == "json":
        out.write(json.dumps(d, indent=1) + "\n")
    else:
        flat = {k: v for k, v in d.items() if k != "rounded_values"}
        _emit_records([flat], args.format, out)
    return EXIT_OK


# ---------------------------------------------------------------- canon

def cmd_canon(args, out):
    tree = parse(args.expr)
    record = {
        "labeled": canonical_labeled(tree).text,
        "shape": canonical_shape(tree).text,
        "s_nodes": s_node_count(tree),
    }
    _emit_records([record], args.format, out)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # accepted before or after the subcommand; the subcommand copy must not
    # reset a value given before it
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--format", choices=["table", "csv", "json"], default=d("table"))
    g.add_argument("--max-n-cap", type=int, default=d(TABLE_CAP),
                   help="refuse generation/table requests above this n")
    g.add_argument("--hex", action="store_true", default=d(False), help="print floats as hex literals")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    p = argparse.ArgumentParser(prog="sdtree", description="Summation trees, SD labels and their counts.",
                                parents=[_global_flags(suppress=False)])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="exact counting formulas")
    c.add_argument("kind", choices=["all", "ladder", "pairwise", "alpha", "tau", "beta", "epsilon", "catalan"])
    c.add_argument("--n", type=int)
    c.add_argument("--s", type=int)
    c.add_argument("--method", help="epsilon: recursive|closed|closed_arithmetic|baruchel; "
                                    "pairwise: tournament_recursive|epsilon_recursive|epsilon_closed; "
                                    "beta: legendre|decomposition|popcount")
    c.set_defaults(func=cmd_count)

    t = sub.add_parser("table", parents=[common], help="tau(n, s) table with alpha row sums")
    t.add_argument("--max-n", type=int, default=15)
    t.set_defaults(func=cmd_table)

    o = sub.add_parser("check-oeis", parents=[common], help="compare against a b-file")
    o.add_argument("sequence", choices=sorted(oeis.SEQUENCES))
    o.add_argument("--fixture", type=Path, help="b-file path (default: bundled snapshot)")
    o.add_argument("--max-terms", type=int)
    o.set_defaults(func=cmd_check_oeis)

    e = sub.add_parser("enumerate", parents=[common], help="list shapes or equivalence classes")
    e.add_argument("kind", choices=["shapes", "classes"])
    e.add_argument("--n", type=int)
    e.add_argument("--s", type=int, help="only shapes with this many S-nodes")
    e.add_argument("--shape", help="restrict classes to this shape expression")
    e.add_argument("--labels", help="comma-separated labels")
    e.add_argument("--count-only", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("eval", parents=[common], help="evaluate one summation")
    v.add_argument("expr")
    v.add_argument("--bind", required=True, help="binding file or inline 'a=1,b=2'")
    v.add_argument("--precision", choices=["binary32", "binary64"], default="binary64")
    v.set_defaults(func=cmd_eval)

    s = sub.add_parser("survey", parents=[common], help="rounding error over equivalence classes")
    s.add_argument("--n", type=int)
    s.add_argument("--selector", default="all", help="all | ladder | pairwise | shape expression")
    s.add_argument("--bind", required=True)
    s.add_argument("--precision", choices=["binary32", "binary64"], default="binary64")
    s.set_defaults(func=cmd_survey)

    k = sub.add_parser("canon", parents=[common], help="canonical labeled form and shape")
    k.add_argument("expr")
    k.set_defaults(func=cmd_canon)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except (EvaluationError, Overflow) as e:
        print(f"sdtree: evaluation error: {e}", file=sys.stderr)
        return EXIT_EVAL
    except (UsageError, ParseError, ValueError, TypeError) as e:
        parser.print_usage(sys.stderr)
        print(f"sdtree: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
