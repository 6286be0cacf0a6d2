"""Command-line entry point: validate, evaluate, sensitivity, what-if,
CSV import, and the serve mode.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.
``--json`` switches the analysis commands to machine-readable output on
stdout; the human form prints compact tables rounded to 4 fractional
digits in the document's display scale.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import io as docio
from .aggregation import EvaluationResult, Ranking, evaluate_problem, rank_options
from .model import DecisionProblem, DisplayScale, ValidationError, validate_problem
from .sensitivity import Overrides, critical_weights, sweep_weight, what_if
from .service import DEFAULT_SWEEP_SAMPLES

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _fmt(value: float) -> str:
    """Human display form: at most 4 fractional digits, trailing zeros cut."""
    text = f"{value:.4f}".rstrip("0").rstrip(".")
    return text if text not in ("", "-") else "0"


def _print_table(rows: list[list[str]], header: list[str]) -> None:
    table = [header] + rows
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


def _print_issues(report) -> None:
    for issue in report.issues:
        print(f"{issue.severity.value}  {issue.path}: {issue.message}")


def _load_validated(path: str) -> tuple[DecisionProblem | None, int]:
    """Parse and validate; on failure print why and hand back the exit code."""
    try:
        text = _read_text(path)
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        return None, EXIT_IO
    try:
        problem = docio.parse_problem(text)
    except docio.DocumentError as exc:
        print(f"invalid document: {exc}", file=sys.stderr)
        return None, EXIT_VALIDATION
    report = validate_problem(problem)
    if not report.ok:
        _print_issues(report)
        return None, EXIT_VALIDATION
    return problem, EXIT_OK


def _print_evaluation(result: EvaluationResult, ranking: Ranking) -> None:
    ranks = {e.option: e for e in ranking.entries}
    title = result.problem_name or "(unnamed problem)"
    print(f"{title}  [{result.aggregation.value}, {result.display_scale.value} scale]")
    rows = []
    for option in result.options:
        entry = ranks[option.name]
        rank_cell = f"{entry.rank}" + (" (tie)" if entry.tied else "")
        rows.append([option.name, _fmt(option.display_utility), rank_cell])
    _print_table(rows, ["option", "utility", "rank"])


def cmd_validate(args) -> int:
    try:
        text = _read_text(args.file)
    except OSError as exc:
        print(f"cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        problem = docio.parse_problem(text)
    except docio.DocumentError as exc:
        print(f"invalid document: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    report = validate_problem(problem)
    if args.json:
        sys.stdout.write(docio.render_json(docio.report_to_obj(report)))
    elif report.issues:
        _print_issues(report)
    else:
        print("ok: no issues")
    return EXIT_OK if report.ok else EXIT_VALIDATION


def cmd_evaluate(args) -> int:
    problem, code = _load_validated(args.file)
    if problem is None:
        return code
    result = evaluate_problem(problem)
    ranking = rank_options(result)
    if args.csv:
        try:
            Path(args.csv).write_text(docio.results_to_csv(result, ranking), encoding="utf-8")
        except OSError as exc:
            print(f"cannot write {args.csv}: {exc}", file=sys.stderr)
            return EXIT_IO
    if args.json:
        sys.stdout.write(docio.results_to_json(result, ranking))
    else:
        _print_evaluation(result, ranking)
    return EXIT_OK


def cmd_sensitivity(args) -> int:
    problem, code = _load_validated(args.file)
    if problem is None:
        return code
    scale = problem.display_scale
    try:
        if args.mode == "critical":
            entry = critical_weights(problem, args.attribute)
            payload = docio.critical_to_obj(entry)
        else:
            samples = sweep_weight(problem, args.attribute, args.samples)
            payload = docio.sweep_to_obj(args.attribute, samples, scale)
    except ValueError as exc:
        print(f"sensitivity failed: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.json:
        sys.stdout.write(docio.render_json(payload))
        return EXIT_OK
    if args.mode == "critical":
        print(f"attribute: {entry.attribute}")
        print(f"top at t=0: {entry.top_at_zero}")
        for b in entry.breakpoints:
            print(f"  t={b.t:.4f}: {b.left} -> {b.right}")
        print(f"top at t=1: {entry.top_at_one}")
    else:
        # collapse the sweep into segments of constant winner
        print(f"attribute: {args.attribute}  ({args.samples} samples)")
        segment_start, current_top = None, None
        last_t = None
        for t, ranking in samples:
            top = ranking.top().option
            if top != current_top:
                if current_top is not None:
                    print(f"  t in [{segment_start:.4f}, {last_t:.4f}]: top {current_top}")
                segment_start, current_top = t, top
            last_t = t
        print(f"  t in [{segment_start:.4f}, {last_t:.4f}]: top {current_top}")
    return EXIT_OK


def _parse_overrides(specs: list[str], problem: DecisionProblem) -> Overrides:
    """Decode --set specs.

    ``<attribute>.importance=<v>`` re-weights an attribute;
    ``<option>.<attribute>=<v>`` overrides a raw value. A leading segment
    that names an attribute wins the ``.importance`` reading.
    """
    attr_names = set(problem.attribute_names())
    importances: dict[str, float] = {}
    values: dict[str, dict[str, float]] = {}
    for spec in specs:
        lhs, sep, rhs = spec.partition("=")
        if not sep:
            raise ValueError(f"--set {spec!r}: expected <target>=<number>")
        try:
            value = float(rhs)
        except ValueError:
            raise ValueError(f"--set {spec!r}: {rhs!r} is not a number") from None
        if lhs.endswith(".importance") and lhs[: -len(".importance")] in attr_names:
            importances[lhs[: -len(".importance")]] = value
            continue
        option, sep, attr = lhs.rpartition(".")
        if not sep:
            raise ValueError(f"--set {spec!r}: expected attr.importance or option.attr")
        values.setdefault(option, {})[attr] = value
    return Overrides(importances=importances, values=values)


def cmd_whatif(args) -> int:
    problem, code = _load_validated(args.file)
    if problem is None:
        return code
    try:
        overrides = _parse_overrides(args.set or [], problem)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    try:
        delta = what_if(problem, overrides)
    except ValidationError as exc:
        _print_issues(exc.report)
        return EXIT_VALIDATION
    if args.json:
        sys.stdout.write(docio.render_json(docio.whatif_to_obj(delta)))
        return EXIT_OK
    scale = 100.0 if delta.before.display_scale is DisplayScale.PERCENT else 1.0
    rows = []
    for d in delta.deltas:
        rows.append([
            d.option,
            _fmt(d.utility_before * scale),
            _fmt(d.utility_after * scale),
            f"{d.delta * scale:+.4f}",
            f"{d.rank_before} -> {d.rank_after}",
        ])
    _print_table(rows, ["option", "before", "after", "delta", "rank"])
    return EXIT_OK


def cmd_import_csv(args) -> int:
    try:
        skeleton_text = _read_text(args.skeleton)
        csv_text = _read_text(args.csv)
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        skeleton = docio.parse_problem(skeleton_text)
    except docio.DocumentError as exc:
        print(f"invalid skeleton: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        options = docio.import_csv(csv_text, skeleton.attributes)
    except docio.CsvImportError as exc:
        print(f"CSV import failed: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    problem = DecisionProblem(
        name=skeleton.name, attributes=skeleton.attributes, options=tuple(options),
        display_scale=skeleton.display_scale, aggregation=skeleton.aggregation,
        schema_version=skeleton.schema_version)
    report = validate_problem(problem)
    if not report.ok:
        _print_issues(report)
        return EXIT_VALIDATION
    try:
        Path(args.output).write_text(docio.serialize_problem(problem), encoding="utf-8")
    except OSError as exc:
        print(f"cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"imported {len(options)} options -> {args.output}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    if not args.store:
        print("serve requires --store (or MAUAKIT_STORE)", file=sys.stderr)
        return EXIT_USAGE
    host, sep, port_text = args.bind.rpartition(":")
    if not sep or not port_text.isdigit():
        print(f"--bind must be <addr:port>, got {args.bind!r}", file=sys.stderr)
        return EXIT_USAGE
    origins = [o.strip() for o in args.cors.split(",")] if args.cors else ["*"]
    app = create_app(args.store, cors_origins=origins, static_dir=args.static)
    uvicorn.run(app, host=host, port=int(port_text), log_level="info")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mauakit",
        description="Multi-attribute utility analysis: score, rank, and probe decisions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a problem document and print the report")
    p.add_argument("file", help="problem document path, or - for stdin")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("evaluate", help="compute utilities and ranking")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", metavar="PATH", help="also write results as CSV")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sensitivity", help="sweep one attribute's weight")
    p.add_argument("file")
    p.add_argument("--attribute", required=True)
    p.add_argument("--mode", choices=["sweep", "critical"], default="critical")
    p.add_argument("--samples", type=int, default=DEFAULT_SWEEP_SAMPLES)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sensitivity)

    p = sub.add_parser("whatif", help="re-evaluate with overrides and diff")
    p.add_argument("file")
    p.add_argument("--set", action="append", metavar="TARGET=VALUE",
                   help="attr.importance=V or option.attr=V (repeatable)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_whatif)

    p = sub.add_parser("import-csv", help="build a problem from a skeleton plus CSV options")
    p.add_argument("skeleton", help="problem document carrying the attribute specs")
    p.add_argument("csv")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_import_csv)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--store", default=os.environ.get("MAUAKIT_STORE"),
                   help="writable directory for problem documents (env MAUAKIT_STORE)")
    p.add_argument("--bind", default=os.environ.get("MAUAKIT_BIND", "127.0.0.1:8643"),
                   metavar="ADDR:PORT", help="bind address (env MAUAKIT_BIND)")
    p.add_argument("--static", default=os.environ.get("MAUAKIT_STATIC"),
                   help="directory of built web UI assets to serve at /")
    p.add_argument("--cors", default=os.environ.get("MAUAKIT_CORS"),
                   help="comma-separated allowed origins (default *)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
