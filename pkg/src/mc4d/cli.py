"""Command line interface over the evaluation pipeline.

Subcommands mirror the process steps: validate the scenario document,
filter infeasible alternatives, evaluate the survivors, sweep a weight,
or serve the HTTP API. Exit codes: 0 success, 1 distinguished negative
outcome (validation violations, nothing feasible), 2 usage/parse errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from mc4d.canonical import canonical_dumps
from mc4d.errors import DegenerateWeights, Mc4dError, ParseError
from mc4d.methods import EvaluationResult, evaluate
from mc4d.model import Scenario, validate_scenario
from mc4d.satisficing import filter_alternatives
from mc4d.sensitivity import weight_sweep
from mc4d.storage import parse_scenario

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

DEFAULT_STORE = os.path.join("~", ".mc4d", "sessions")


def _read_scenario(path: str, check: bool = True) -> Scenario:
    raw = Path(path).read_bytes()
    return parse_scenario(raw, check=check)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _result_table(result: EvaluationResult) -> str:
    lines = [f"method: {result.method}"]
    if result.outcome != "ok":
        lines.append("no feasible alternatives; excluded:")
    else:
        best = result.ranking[0].score
        lines.append(f"{'rank':<5} {'alternative':<24} {'score':>10} {'vs best':>9}")
        for entry in result.ranking:
            ratio = best / entry.score if entry.score > 0 else float("inf")
            lines.append(
                f"{entry.rank:<5} {entry.alternative:<24} {entry.score:>10.4f} {ratio:>8.2f}x"
            )
        if result.filtered_out.excluded:
            lines.append("excluded:")
    for alternative, violations in result.filtered_out.excluded:
        reasons = "; ".join(
            f"{v.requirement.criterion_id} {v.requirement.bound} {v.requirement.threshold} "
            f"(observed {v.observed})"
            for v in violations
        )
        lines.append(f"  {alternative}: {reasons}")
    for warning in result.warnings:
        lines.append(f"warning: {warning}")
    return "\n".join(lines)


def _cmd_validate(args) -> int:
    scenario = _read_scenario(args.scenario, check=False)
    report = validate_scenario(scenario)
    if args.format == "json":
        _emit(canonical_dumps(report.to_dict()), args.output)
    else:
        if report.ok:
            _emit("scenario is valid", args.output)
        else:
            _emit(
                "\n".join(f"{v.code} at {v.location}: {v.message}" for v in report.violations),
                args.output,
            )
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def _cmd_filter(args) -> int:
    scenario = _read_scenario(args.scenario)
    outcome = filter_alternatives(scenario)
    if args.format == "json":
        _emit(canonical_dumps(outcome.to_dict()), args.output)
    else:
        lines = [f"feasible: {', '.join(outcome.feasible) or '(none)'}"]
        for alternative, violations in outcome.excluded:
            reasons = "; ".join(
                f"{v.requirement.criterion_id} {v.requirement.bound} "
                f"{v.requirement.threshold} (observed {v.observed})"
                for v in violations
            )
            lines.append(f"excluded {alternative}: {reasons}")
        _emit("\n".join(lines), args.output)
    if not outcome.feasible:
        print("NoFeasibleAlternatives: every alternative violates a requirement", file=sys.stderr)
        return EXIT_NEGATIVE
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    scenario = _read_scenario(args.scenario)
    result = evaluate(scenario, method=args.method)
    if args.format == "json":
        _emit(canonical_dumps(result.to_dict()), args.output)
    else:
        _emit(_result_table(result), args.output)
    return EXIT_OK if result.outcome == "ok" else EXIT_NEGATIVE


def _cmd_sensitivity(args) -> int:
    scenario = _read_scenario(args.scenario)
    try:
        sweep = weight_sweep(scenario, args.criterion, args.steps)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateWeights as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    if args.format == "json":
        _emit(canonical_dumps(sweep.to_dict()), args.output)
    else:
        lines = [f"criterion: {sweep.criterion_id}"]
        for sample in sweep.samples:
            top = sample.ranking[0]
            lines.append(f"  w={sample.weight:.4f}  #1 {top.alternative} ({top.score:.4f})")
        if sweep.reversal_points:
            points = ", ".join(f"{p:.4f}" for p in sweep.reversal_points)
            lines.append(f"rank-1 reversals near: {points}")
        else:
            lines.append("no rank-1 reversal in the sweep range")
        _emit("\n".join(lines), args.output)
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from mc4d.service import create_app

    host, _, port = args.addr.partition(":")
    store = Path(os.path.expanduser(args.store))
    app = create_app(store_root=store)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or "8000"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mc4d",
        description="Filter, evaluate and rank decision alternatives against weighted criteria.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, with_method=False):
        p.add_argument("scenario", help="path to a scenario document (scenario.mc4d.json)")
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--output", help="write to this file instead of stdout")
        if with_method:
            p.add_argument("--method", choices=("anp", "saw"), default=None)

    add_io(sub.add_parser("validate", help="report every invariant violation"))
    add_io(sub.add_parser("filter", help="apply the requirement cutoffs"))
    add_io(sub.add_parser("evaluate", help="run the full pipeline"), with_method=True)
    sensitivity = sub.add_parser("sensitivity", help="sweep one weight and watch the ranking")
    add_io(sensitivity)
    sensitivity.add_argument("--criterion", required=True, help="criterion (or cluster) to sweep")
    sensitivity.add_argument("--steps", type=int, default=11)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--addr", default="127.0.0.1:8000")
    serve.add_argument(
        "--store",
        default=os.environ.get("MC4D_STORE", DEFAULT_STORE),
        help="session store directory (env: MC4D_STORE)",
    )
    return parser


_HANDLERS = {
    "validate": _cmd_validate,
    "filter": _cmd_filter,
    "evaluate": _cmd_evaluate,
    "sensitivity": _cmd_sensitivity,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except FileNotFoundError as exc:
        print(f"error: cannot read {exc.filename}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Mc4dError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
