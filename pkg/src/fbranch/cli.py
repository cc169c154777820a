"""Command-line front end.

Commands: width, solve, kernelize, prune, classify, typical, verify-lemmas.
Reports are plain text or JSON (schema "fbranch/1"); with a fixed seed and
configuration the emitted documents are byte-identical across runs.  The
environment variable FBRANCH_THREADS caps worker parallelism; the current
implementation evaluates sequentially, which satisfies any positive cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .cutfn import FamilySelector
from .decomp import (
    decomposition_to_json_dict,
    decomposition_to_text,
    decomposition_width,
    exact_branchwidth_dp,
    exact_branchwidth_enum,
    greedy_branchwidth,
    parse_decomposition,
    validate_decomposition,
)
from .errors import FBranchError
from .families import classify_si, parse_ordered_bipartite
from .graph import graph_to_json_dict, graph_to_text, parse_graph
from .kernel import kernelize_fes
from .treedepth import prune_by_treedepth
from .typseq import (
    enumerate_typical,
    format_sequence,
    interleave,
    parse_sequence,
    typical_of,
)
from .verify import SUITES, run_suites

SCHEMA = "fbranch/1"


def _threads_cap() -> int:
    raw = os.environ.get("FBRANCH_THREADS", "")
    if not raw:
        return 1
    try:
        cap = int(raw)
    except ValueError:
        raise FBranchError(f"FBRANCH_THREADS must be an integer, got {raw!r}")
    if cap < 1:
        raise FBranchError("FBRANCH_THREADS must be positive")
    return cap


def _read(path: str) -> str:
    return Path(path).read_text()


def _emit(doc: dict, text: str, fmt: str, out: str | None) -> None:
    payload = json.dumps(doc, indent=2, sort_keys=True) + "\n" if fmt == "json" else text
    if out:
        Path(out).write_text(payload)
    else:
        sys.stdout.write(payload)


def cmd_width(args) -> int:
    g = parse_graph(_read(args.graph))
    bd = parse_decomposition(_read(args.decomp))
    sel = FamilySelector.parse(args.families)
    validate_decomposition(bd, g)
    report = decomposition_width(bd, g, sel)
    doc = {"schema": SCHEMA, "command": "width", **report.to_json_dict()}
    lines = [f"width {report.width} (families {sel.name()})"]
    for e, (v, _) in sorted(report.per_edge.items()):
        lines.append(f"edge {e[0]}-{e[1]}: {v}")
    _emit(doc, "\n".join(lines) + "\n", args.report, args.out)
    return 0


def cmd_solve(args) -> int:
    g = parse_graph(_read(args.graph))
    sel = FamilySelector.parse(args.families)
    if args.solver == "dp":
        width, bd = exact_branchwidth_dp(g, sel, limit=args.limit)
    elif args.solver == "enum":
        width, bd = exact_branchwidth_enum(g, sel, limit=min(args.limit, 9))
    else:
        width, bd = greedy_branchwidth(g, sel)
    validate_decomposition(bd, g)
    check = decomposition_width(bd, g, sel)
    if args.solver != "greedy" and check.width != width:
        raise FBranchError("internal: reported width does not re-evaluate")
    doc = {
        "schema": SCHEMA, "command": "solve", "solver": args.solver,
        "families": sel.name(), "width": width,
        "graph": graph_to_json_dict(g),
        "decomposition": decomposition_to_json_dict(bd),
    }
    text = f"width {width} (solver {args.solver}, families {sel.name()})\n"
    text += decomposition_to_text(bd)
    if args.out_decomp:
        Path(args.out_decomp).write_text(decomposition_to_text(bd))
    _emit(doc, text, args.report, args.out)
    return 0


def cmd_kernelize(args) -> int:
    g = parse_graph(_read(args.infile))
    trace = kernelize_fes(g)
    final = trace.final_graph
    if args.out:
        Path(args.out).write_text(graph_to_text(final))
    if args.trace:
        doc = {"schema": SCHEMA, "command": "kernelize", **trace.to_json_dict()}
        Path(args.trace).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    if trace.forest_shortcircuit:
        sys.stdout.write(
            f"forest input: width {trace.forest_width}, kernel unchanged "
            f"(n={final.n})\n")
    else:
        sys.stdout.write(
            f"k={trace.k}: {g.n} vertices -> {final.n} "
            f"({len(trace.steps)} reduction steps)\n")
    return 0


def cmd_prune(args) -> int:
    g = parse_graph(_read(args.infile))
    pruned, record = prune_by_treedepth(
        g, threshold=args.threshold, paper_bound=args.paper_bound)
    if args.out:
        Path(args.out).write_text(graph_to_text(pruned))
    sys.stdout.write(
        f"{g.n} vertices -> {pruned.n} "
        f"({record.removed_count()} vertices pruned in "
        f"{len(record.removed)} subtrees)\n")
    return 0


def cmd_classify(args) -> int:
    h = parse_ordered_bipartite(_read(args.infile))
    tags = classify_si(h)
    if tags:
        sys.stdout.write(",".join(t.value for t in tags) + "\n")
        return 0
    sys.stdout.write("none\n")
    return 0


def cmd_typical(args) -> int:
    if args.enumerate is not None:
        for s in enumerate_typical(args.enumerate):
            sys.stdout.write(format_sequence(s) + "\n")
        return 0
    if not args.seq:
        raise FBranchError("typical needs --seq or --enumerate")
    s = parse_sequence(args.seq)
    if args.interleave:
        t = parse_sequence(args.interleave)
        for r in sorted(interleave(typical_of(s), typical_of(t))):
            sys.stdout.write(format_sequence(r) + "\n")
        return 0
    sys.stdout.write(format_sequence(typical_of(s)) + "\n")
    return 0


def cmd_verify_lemmas(args) -> int:
    names = args.only if args.only else None
    results = run_suites(names, seed=args.seed, quick=args.quick)
    failures = []
    for r in results:
        sys.stdout.write(r.line() + "\n")
        if not r.ok:
            failures.append(r)
    if failures:
        out_dir = Path(args.counterexamples)
        out_dir.mkdir(parents=True, exist_ok=True)
        for r in failures:
            path = out_dir / f"counterexample-{r.name}.json"
            path.write_text(json.dumps(
                {"schema": SCHEMA, "suite": r.name, "violations": r.violations},
                indent=2, sort_keys=True, default=str) + "\n")
            sys.stdout.write(f"counterexamples written to {path}\n")
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fbranch",
        description="branchwidth under obstruction-pattern cut functions")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    w = sub.add_parser("width", help="evaluate a decomposition's width")
    w.add_argument("--graph", required=True)
    w.add_argument("--decomp", required=True)
    w.add_argument("--families", default="primal")
    w.add_argument("--report", choices=("text", "json"), default="text")
    w.add_argument("--out")
    w.set_defaults(fn=cmd_width)

    s = sub.add_parser("solve", help="compute an optimal (or greedy) decomposition")
    s.add_argument("--graph", required=True)
    s.add_argument("--families", default="primal")
    s.add_argument("--solver", choices=("dp", "enum", "greedy"), default="dp")
    s.add_argument("--limit", type=int, default=15)
    s.add_argument("--out-decomp")
    s.add_argument("--report", choices=("text", "json"), default="text")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_solve)

    k = sub.add_parser("kernelize", help="feedback-edge-set kernelization")
    k.add_argument("--in", dest="infile", required=True)
    k.add_argument("--out")
    k.add_argument("--trace")
    k.set_defaults(fn=cmd_kernelize)

    pr = sub.add_parser("prune", help="treedepth-based duplicate pruning")
    pr.add_argument("--in", dest="infile", required=True)
    pr.add_argument("--threshold", type=int, default=None,
                    help="fixed duplicate-class bound (default: surrogate)")
    pr.add_argument("--paper-bound", action="store_true",
                    help="use the provable class bound instead of the surrogate")
    pr.add_argument("--out")
    pr.set_defaults(fn=cmd_prune)

    c = sub.add_parser("classify", help="recognize an ordered bipartite pattern")
    c.add_argument("--in", dest="infile", required=True)
    c.set_defaults(fn=cmd_classify)

    t = sub.add_parser("typical", help="sequence compression utilities")
    t.add_argument("--seq", help="comma-separated entries, _|_ for bottom")
    t.add_argument("--interleave", help="second sequence")
    t.add_argument("--enumerate", type=int, default=None, metavar="K",
                   help="list all compressed sequences with entries up to K")
    t.set_defaults(fn=cmd_typical)

    v = sub.add_parser("verify-lemmas", help="run the structural-law suites")
    v.add_argument("--only", action="append", choices=sorted(SUITES),
                   help="run only this suite (repeatable)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--quick", action="store_true",
                   help="reduced budgets for a fast pass")
    v.add_argument("--counterexamples", default="counterexamples",
                   help="directory for violation dumps")
    v.set_defaults(fn=cmd_verify_lemmas)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _threads_cap()  # validate the env var early
        return args.fn(args)
    except FBranchError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def console_main() -> None:
    sys.exit(main())
