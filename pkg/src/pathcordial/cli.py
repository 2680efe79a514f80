"""Command-line front end.

Exit codes: 0 cordial / found, 1 proven negative, 2 input error,
3 inconclusive (budget or bound exhausted).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .constructors import (
    IMPOSSIBLE,
    BaseNotFound,
    ConstructionTrace,
    construct_cycle,
    construct_path,
    hardcoded_names,
)
from .groups import parse_group
from .labeling import GraphLabeling, Kind, check_cordial
from .search import (
    DEFAULT_ORACLE_BOUND,
    OracleBoundExceeded,
    SearchOptions,
    Verdict,
    count_labelings,
    search,
    verify_exp2_argument,
)
from .sweep import format_sweep_table, sweep_conjecture
from .textio import LabelParseError, format_labeling, format_labels, parse_labeling, parse_labels

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INCONCLUSIVE = 3

ENV_PREFIX = "PATHCORDIAL_"

_GLOBAL_DEFAULTS = {
    "json": False,
    "threads": None,
    "node_budget": None,
    "oracle_bound": DEFAULT_ORACLE_BOUND,
    "seed": 0,
}


class InputError(Exception):
    pass


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                   help="machine-readable output")
    p.add_argument("--threads", type=_positive_int, default=argparse.SUPPRESS,
                   help="worker processes for search")
    p.add_argument("--node-budget", type=_positive_int, default=argparse.SUPPRESS,
                   help="abandon a search after this many nodes")
    p.add_argument("--oracle-bound", type=_positive_int, default=argparse.SUPPRESS,
                   help="largest n**m the counting oracle will enumerate")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                   help="seed for randomized checks")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(
        prog="pathcordial",
        description="Cordial labelings of paths and cycles over finite abelian groups.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="verify a labeling")
    p.add_argument("--group", help="group spec such as 2x4")
    p.add_argument("--labels", help="vertex labels such as 00-12-10")
    p.add_argument("--kind", choices=["path", "cycle"], default="path")
    p.add_argument("--file", help="labeling file ('-' for stdin)")

    p = sub.add_parser("construct", parents=[common], help="build a cordial labeling")
    p.add_argument("--group", required=True)
    p.add_argument("--length", type=_positive_int, required=True)
    p.add_argument("--kind", choices=["path", "cycle"], default="path")

    p = sub.add_parser("search", parents=[common], help="exhaustive search")
    p.add_argument("--group", required=True)
    p.add_argument("--length", type=_positive_int, required=True)
    p.add_argument("--kind", choices=["path", "cycle"], default="path")
    p.add_argument("--canonical", action="store_true",
                   help="sequential lexicographic search with a stable witness")
    p.add_argument("--no-symmetry", action="store_true",
                   help="disable shift/reversal normalization")

    p = sub.add_parser("count", parents=[common], help="count cordial labelings by enumeration")
    p.add_argument("--group", required=True)
    p.add_argument("--length", type=_positive_int, required=True)
    p.add_argument("--kind", choices=["path", "cycle"], default="path")

    p = sub.add_parser("sweep", parents=[common], help="small-order conjecture sweep")
    p.add_argument("--max-order", type=_positive_int, required=True)
    p.add_argument("--max-multiple", type=_positive_int, default=3)

    p = sub.add_parser("exp2", parents=[common], help="check the (Z_2)^m sum argument")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--trials", type=_positive_int, default=None,
                   help="random permutations (default: all permutations)")

    sub.add_parser("table", parents=[common], help="list the published labelings")
    return parser


def _env_overrides(args: argparse.Namespace) -> None:
    for key, default in _GLOBAL_DEFAULTS.items():
        if hasattr(args, key):
            continue
        raw = os.environ.get(ENV_PREFIX + key.upper())
        if raw is None:
            setattr(args, key, default)
        elif key == "json":
            setattr(args, key, raw.lower() in ("1", "true", "yes"))
        else:
            try:
                setattr(args, key, int(raw))
            except ValueError:
                raise InputError(f"{ENV_PREFIX}{key.upper()} must be an integer, got {raw!r}")


def _group(text: str):
    try:
        return parse_group(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _opts(args, **extra) -> SearchOptions:
    return SearchOptions(node_budget=args.node_budget, thread_hint=args.threads, **extra)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _report_text(lab: GraphLabeling) -> tuple[dict, str]:
    report = check_cordial(lab)
    verdict = "cordial" if report.cordial else "not cordial"
    text = "\n".join(
        [
            f"group {lab.group}, {lab.kind.value} on {len(lab)} vertices: {verdict}",
            f"  vertex partition {list(report.vertex_partition.partition)}"
            f" ({'ok' if report.vertex_ok else 'not almost rectangular'})",
            f"  edge partition   {list(report.edge_partition.partition)}"
            f" ({'ok' if report.edge_ok else 'not almost rectangular'})",
        ]
    )
    payload = {"group": str(lab.group), "kind": lab.kind.value, "length": len(lab),
               "labels": format_labels(lab), **report.to_dict()}
    return payload, text


def cmd_check(args) -> int:
    try:
        if args.file is not None:
            if args.group or args.labels:
                raise InputError("give either --file or --group/--labels, not both")
            raw = sys.stdin.read() if args.file == "-" else Path(args.file).read_text("utf-8")
            lab = parse_labeling(raw)
        else:
            if not args.group or args.labels is None:
                raise InputError("check needs --file or both --group and --labels")
            g = _group(args.group)
            lab = GraphLabeling(g, Kind(args.kind), tuple(parse_labels(g, args.labels)))
    except (LabelParseError, OSError) as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload, text = _report_text(lab)
    _emit(args, payload, text)
    return EXIT_OK if payload["cordial"] else EXIT_NEGATIVE


def cmd_construct(args) -> int:
    g = _group(args.group)
    trace = ConstructionTrace()
    opts = _opts(args) if args.node_budget else None
    if args.kind == "cycle" and args.length < 3:
        raise InputError("a cycle needs at least three vertices")
    try:
        if args.kind == "path":
            lab = construct_path(g, args.length, trace, opts)
        else:
            lab = construct_cycle(g, args.length, trace, opts)
    except BaseNotFound as exc:
        payload = {"group": str(g), "kind": args.kind, "length": args.length,
                   "status": "exhausted" if exc.exhausted else "inconclusive",
                   "message": str(exc), "trace": trace.to_list()}
        _emit(args, payload, f"NOT FOUND: {exc}")
        return EXIT_NEGATIVE if exc.exhausted else EXIT_INCONCLUSIVE
    if lab is IMPOSSIBLE:
        payload = {"group": str(g), "kind": args.kind, "length": args.length,
                   "status": "impossible", "trace": trace.to_list()}
        _emit(args, payload,
              f"IMPOSSIBLE: P_{args.length} is not {g}-cordial (sum argument for (Z_2)^r)")
        return EXIT_NEGATIVE
    payload = {"group": str(g), "kind": args.kind, "length": len(lab), "status": "cordial",
               "labels": format_labels(lab), "labeling": format_labeling(lab),
               "trace": trace.to_list()}
    trace_lines = [f"# {s.rule} " + " ".join(f"{k}={v}" for k, v in s.params.items())
                   for s in trace.steps]
    _emit(args, payload, format_labeling(lab) + "\n".join(trace_lines))
    return EXIT_OK


def cmd_search(args) -> int:
    g = _group(args.group)
    opts = _opts(
        args,
        canonical_witness=args.canonical,
        symmetry_reduction=not args.no_symmetry,
    )
    try:
        outcome = search(g, args.kind, args.length, opts)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = {"group": str(g), "kind": args.kind, "length": args.length, **outcome.to_dict()}
    lines = [f"{outcome.verdict.value.upper()}: {args.kind} of length {args.length} over {g}"]
    if outcome.witness is not None:
        lines.append(f"  witness {format_labels(outcome.witness)}")
    lines.append(
        f"  {outcome.nodes_explored} nodes, {outcome.elapsed:.3f} s, symmetry {outcome.symmetry_mode}"
    )
    _emit(args, payload, "\n".join(lines))
    return {
        Verdict.FOUND: EXIT_OK,
        Verdict.EXHAUSTED: EXIT_NEGATIVE,
        Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    }[outcome.verdict]


def cmd_count(args) -> int:
    g = _group(args.group)
    try:
        total = count_labelings(g, args.kind, args.length, bound=args.oracle_bound)
    except OracleBoundExceeded as exc:
        _emit(args, {"error": str(exc)}, f"bound exceeded: {exc}")
        return EXIT_INCONCLUSIVE
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(args, {"group": str(g), "kind": args.kind, "length": args.length, "count": total},
          str(total))
    return EXIT_OK


def cmd_sweep(args) -> int:
    opts = _opts(args) if (args.node_budget or args.threads) else None
    records = sweep_conjecture(args.max_order, args.max_multiple, opts)
    if args.json:
        print(json.dumps([r.to_dict() for r in records], indent=2))
    else:
        print(format_sweep_table(records))
    if any(r.status == "FAIL" for r in records):
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_exp2(args) -> int:
    try:
        report = verify_exp2_argument(args.m, args.trials, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = {**report.__dict__, "passed": report.passed}
    text = "\n".join(
        [
            f"(Z_2)^{report.m}: {report.permutations_checked} permutations"
            f" ({'exhaustive' if report.exhaustive else 'random'})",
            f"  nonidentity elements sum to identity: {report.nonidentity_sum_is_identity}",
            f"  edge sum equals leaf sum:             {report.edge_sum_matches_leaves}",
            f"  permutations with all nonidentity edge labels: {report.full_edge_set_hits}",
            f"  {'PASS' if report.passed else 'FAIL'}",
        ]
    )
    _emit(args, payload, text)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_table(args) -> int:
    from .constructors import hardcoded_labeling

    rows = []
    for name in hardcoded_names():
        lab = hardcoded_labeling(name)
        rows.append({"name": name, "group": str(lab.group), "kind": lab.kind.value,
                     "length": len(lab), "labels": format_labels(lab)})
    _emit(args, {"labelings": rows},
          "\n".join(f"{r['name']:<8} {r['group']:<6} {r['kind']:<5} {r['length']:>3}  {r['labels']}"
                    for r in rows))
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "construct": cmd_construct,
    "search": cmd_search,
    "count": cmd_count,
    "sweep": cmd_sweep,
    "exp2": cmd_exp2,
    "table": cmd_table,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which matches the input-error code
        return int(exc.code or 0)
    # fail loudly if the shipped labeling table is corrupt
    hardcoded_names()
    try:
        _env_overrides(args)
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
