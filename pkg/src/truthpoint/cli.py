"""Command-line front end.

Exit status is 0 when a command completes without violations, 1 when it
finds violations or rejects a seed, and 2 for unreadable input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .coding import CodingError, DefinitionsError
from .fixpoint import (
    DEFAULT_BOUND, FixpointError, enumerate_fixed_points, extend_from_sound,
    greatest_sound_subset, lfp, maximal, report_for, classify,
)
from .model import ModelError
from .norms import report_card
from .operator import ClosureError, explain
from .syntax import SentenceError
from .workspace import Workspace


class CommandFailed(Exception):
    """The command ran but found violations."""


# ------------------------------------------------------------ rendering

def _universe(ws, universe):
    reg = ws.registry
    out = []
    for s in universe:
        code = reg.by_sentence[s]
        entry = {"code": code, "text": reg.render(s)}
        alias = reg.alias_of(code)
        if alias:
            entry["alias"] = alias
        out.append(entry)
    return out


def _stages(trace):
    rows = []
    prev = None
    for i, stage in enumerate(trace.stages):
        row = {"index": i, "codes": sorted(stage)}
        if prev is not None:
            row["added"] = sorted(stage - prev)
            row["removed"] = sorted(prev - stage)
        rows.append(row)
        prev = stage
    return rows


def _classification(ws, classification):
    reg = ws.registry
    return [{"code": reg.by_sentence[s], "text": reg.render(s), "verdict": v}
            for s, v in sorted(classification.items(), key=lambda kv: reg.by_sentence[kv[0]])]


def _fmt_codes(codes):
    return "{" + ", ".join(f"#{c}" for c in sorted(codes)) + "}"


def _text_stages(ws, stages):
    lines = ["stage  size  change"]
    for row in stages:
        change = []
        change += [f"+#{c}" for c in row.get("added", [])]
        change += [f"-#{c}" for c in row.get("removed", [])]
        lines.append(f"{row['index']:>5}  {len(row['codes']):>4}  {' '.join(change) or '-'}")
    return lines


def _text_universe(rows):
    lines = ["universe:"]
    for r in rows:
        name = f"  [{r['alias']}]" if "alias" in r else ""
        lines.append(f"  #{r['code']:<3} {r['text']}{name}")
    return lines


def _text_classification(rows):
    lines = ["classification:"]
    for r in rows:
        lines.append(f"  #{r['code']:<3} {r['verdict']:<10} {r['text']}")
    return lines


def _emit(args, payload, text_lines):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _base(command, ws, universe):
    return {"command": command, "universe": _universe(ws, universe), "stages": [],
            "classification": [], "violations": []}


# ------------------------------------------------------------- commands

def _workspace(args) -> Workspace:
    defs = args.defs
    if defs is None and Path("defs.txt").exists():
        defs = "defs.txt"
    model = args.model
    if model is None and args.rank is None and Path("model.txt").exists():
        model = "model.txt"
    return Workspace.load(defs, model, args.rank or 4)


def cmd_classify(args, ws):
    query = ws.query(args.query)
    universe = ws.universe([query])
    reg = ws.registry
    report = lfp(ws.model, reg, universe, args.full_semantics)
    code = reg.register(query)
    verdict = report.classification[query]
    payload = _base("classify", ws, universe)
    payload["stages"] = _stages(report.trace)
    payload["classification"] = _classification(ws, report.classification)
    payload["fixed_point"] = sorted(report.fixed_point)
    payload["query"] = {"code": code, "text": reg.render(query), "verdict": verdict}
    lines = [f"{reg.render(query)}: {verdict}"]
    if args.explain:
        tr = explain(ws.model, reg, report.fixed_point, query, args.full_semantics)
        payload["trace"] = tr.to_dict(reg)
        lines += ["", f"derivation at the least fixed point {_fmt_codes(report.fixed_point)}:",
                  tr.render(reg)]
    _figure(args, report.trace)
    _emit(args, payload, lines)


def cmd_explain(args, ws):
    query = ws.query(args.query)
    universe = ws.universe([query])
    reg = ws.registry
    if args.at == "empty":
        u = frozenset()
    else:
        u = lfp(ws.model, reg, universe, args.full_semantics).fixed_point
    tr = explain(ws.model, reg, u, query, args.full_semantics)
    payload = _base("explain", ws, universe)
    payload["at"] = sorted(u)
    payload["trace"] = tr.to_dict(reg)
    _emit(args, payload, [f"U = {_fmt_codes(u)}", tr.render(reg)])


def _fixpoint_output(args, ws, command, report, extra_lines=()):
    reg = ws.registry
    payload = _base(command, ws, report.universe)
    payload["stages"] = _stages(report.trace)
    payload["classification"] = _classification(ws, report.classification)
    payload["fixed_point"] = sorted(report.fixed_point)
    lines = _text_universe(payload["universe"]) + [""]
    lines += list(extra_lines)
    lines += _text_stages(ws, payload["stages"]) + [""]
    lines.append("fixed point: " + _fmt_codes(report.fixed_point))
    for c in sorted(report.fixed_point):
        lines.append(f"  #{c:<3} {reg.render(reg.sentence(c))}")
    lines += [""] + _text_classification(payload["classification"])
    _figure(args, report.trace)
    _emit(args, payload, lines)


def cmd_lfp(args, ws):
    universe = ws.universe()
    report = lfp(ws.model, ws.registry, universe, args.full_semantics)
    _fixpoint_output(args, ws, "lfp", report)


def cmd_extend(args, ws):
    seeds = [ws.query(n) for n in args.seed]
    universe = ws.universe(seeds)
    v = frozenset(ws.registry.by_sentence[ws.registry.resolve(s)] for s in seeds)
    try:
        report = extend_from_sound(ws.model, ws.registry, universe, v, args.full_semantics)
    except FixpointError as exc:
        _violation(args, ws, "extend", universe, str(exc))
    _fixpoint_output(args, ws, "extend", report, [f"seed: {_fmt_codes(v)}", ""])


def cmd_soundify(args, ws):
    targets = [ws.query(n) for n in args.set]
    universe = ws.universe(targets)
    reg = ws.registry
    w = frozenset(reg.by_sentence[reg.resolve(s)] for s in targets)
    try:
        v, trace = greatest_sound_subset(ws.model, reg, universe, w, args.full_semantics)
    except FixpointError as exc:
        _violation(args, ws, "soundify", universe, str(exc))
    payload = _base("soundify", ws, universe)
    payload["stages"] = _stages(trace)
    payload["target"] = sorted(w)
    payload["sound_subset"] = sorted(v)
    lines = _text_universe(payload["universe"]) + ["", f"target W: {_fmt_codes(w)}", ""]
    lines += _text_stages(ws, payload["stages"]) + [""]
    lines.append(f"greatest sound subset: {_fmt_codes(v)}  "
                 f"({trace.converged_at} step(s), decreasing)")
    for c in sorted(v):
        lines.append(f"  #{c:<3} {reg.render(reg.sentence(c))}")
    _figure(args, trace)
    _emit(args, payload, lines)


def cmd_enumerate(args, ws):
    universe = ws.universe()
    reg = ws.registry
    points = enumerate_fixed_points(ws.model, reg, universe, args.max_universe,
                                    args.full_semantics)
    tops = maximal(points)
    payload = _base("enumerate", ws, universe)
    payload["fixed_points"] = []
    lines = _text_universe(payload["universe"]) + ["", f"{len(points)} fixed point(s):"]
    for p in points:
        cls = classify(ws.model, reg, p, universe, args.full_semantics)
        defined = {n: cls[ws.definition(n)] for n in ws.names}
        payload["fixed_points"].append({
            "codes": sorted(p), "least": p == points[0], "maximal": p in tops,
            "definitions": defined,
        })
        tags = [t for t, on in (("least", p == points[0]), ("maximal", p in tops)) if on]
        lines.append(f"  {_fmt_codes(p)}" + (f"  [{', '.join(tags)}]" if tags else ""))
        for n, v in defined.items():
            lines.append(f"      {n}: {v}")
    if args.figure:
        from .plotting import plot_fixed_points
        plot_fixed_points(points, args.figure)
    _emit(args, payload, lines)


def cmd_norms(args, ws):
    universe = ws.universe()
    reg = ws.registry
    if args.all_fixed_points:
        points = enumerate_fixed_points(ws.model, reg, universe, args.max_universe,
                                        args.full_semantics)
        reports = [report_for(ws.model, reg, universe, p, args.full_semantics) for p in points]
    else:
        reports = [lfp(ws.model, reg, universe, args.full_semantics)]
    payload = _base("norms", ws, universe)
    payload["cards"] = []
    lines = []
    failed = False
    for report in reports:
        card = report_card(ws.model, reg, report, args.samples, args.seed)
        payload["cards"].append({"fixed_point": sorted(report.fixed_point),
                                 "norms": [r.to_dict() for r in card]})
        lines.append(f"fixed point {_fmt_codes(report.fixed_point)}")
        for r in card:
            status = r.status.upper()
            detail = f"{r.checked} checked" if r.status != "by-construction" else r.note
            lines.append(f"  ({r.norm}) {status:<15} {r.title}: {detail}")
            for v in r.violations:
                lines.append(f"        violation: {v}")
                payload["violations"].append(f"({r.norm}) {v}")
            for e in r.exemptions:
                lines.append(f"        exempt: {e}")
            failed |= not r.passed
        lines.append("")
    if len(reports) == 1:
        payload["classification"] = _classification(ws, reports[0].classification)
        payload["stages"] = _stages(reports[0].trace)
    lines.append("all runtime norms pass" if not failed else "norm violations found")
    _emit(args, payload, lines)
    if failed:
        raise CommandFailed


def _violation(args, ws, command, universe, message):
    payload = _base(command, ws, universe)
    payload["violations"] = [message]
    _emit(args, payload, [f"error: {message}"])
    raise CommandFailed


def _figure(args, trace):
    if getattr(args, "figure", None):
        from .plotting import plot_stages
        plot_stages(trace, args.figure)


# --------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", help="model file (default: model.txt if present)")
    common.add_argument("--defs", help="definitions file (default: defs.txt if present)")
    common.add_argument("--rank", type=int, default=None,
                        help="use the hereditarily finite sets V_rank as the model (default 4)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--full-semantics", action="store_true",
                        help="give 'exists x . T(x)' and 'forall x . T(x)' their "
                             "verdicts at a full fixed point")
    common.add_argument("--max-universe", type=int, default=DEFAULT_BOUND,
                        help="largest universe searched exhaustively (default %(default)s)")

    figure = argparse.ArgumentParser(add_help=False)
    figure.add_argument("--figure", metavar="PATH", help="also write a figure to PATH")

    parser = argparse.ArgumentParser(
        prog="truthpoint",
        description="Truth as a fixed point over a finite set-membership structure.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common, figure],
                       help="classify a sentence or alias at the least fixed point")
    p.add_argument("query")
    p.add_argument("--explain", action="store_true", help="print the rule derivation")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("explain", parents=[common], help="rule-by-rule derivation of a sign")
    p.add_argument("query")
    p.add_argument("--at", choices=("lfp", "empty"), default="lfp",
                   help="code set to evaluate against (default: least fixed point)")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("lfp", parents=[common, figure], help="least fixed point")
    p.set_defaults(func=cmd_lfp)

    p = sub.add_parser("extend", parents=[common, figure],
                       help="smallest fixed point containing a sound seed")
    p.add_argument("--seed", nargs="+", required=True, metavar="NAME")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("soundify", parents=[common, figure],
                       help="greatest sound subset of a consistent set")
    p.add_argument("--set", nargs="+", required=True, metavar="NAME")
    p.set_defaults(func=cmd_soundify)

    p = sub.add_parser("enumerate", parents=[common, figure],
                       help="all fixed points by exhaustive search")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("norms", parents=[common], help="norm report card")
    p.add_argument("--all-fixed-points", action="store_true",
                   help="check every enumerated fixed point, not only the least")
    p.add_argument("--samples", type=int, default=200,
                   help="sentence pairs drawn for the compositionality check")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.set_defaults(func=cmd_norms)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ws = _workspace(args)
        args.func(args, ws)
    except CommandFailed:
        return 1
    except (OSError, ModelError, DefinitionsError, CodingError, SentenceError,
            ClosureError, FixpointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
