"""Command-line entry point: run scenario files or built-in reproductions."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .scenarios import BUILTIN_IDS, ScenarioError, UnknownScenario, builtin_scenario, load_scenario, run_scenario


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperspace", description="Desk-scale hyperspace scenario runner")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "csv", "json"), default="table")
    common.add_argument("--epsilon", type=float, help="override the scenario's default epsilon")
    common.add_argument("--horizon", type=int, help="override the default horizon")
    common.add_argument("--depth", type=int, help="override the default truncation depth")
    common.add_argument("--seed", type=int, help="override the random seed")
    common.add_argument("--out", type=Path, help="write the report here instead of stdout")
    common.add_argument("--no-timing", action="store_true", help="leave the ms column empty")

    run = sub.add_parser("run", parents=[common], help="run a scenario file")
    run.add_argument("scenario", type=Path)
    builtin = sub.add_parser("builtin", parents=[common], help="run a built-in scenario")
    builtin.add_argument("name")
    sub.add_parser("list-builtins", help="print the built-in scenario ids")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list-builtins":
        for name in BUILTIN_IDS:
            print(name)
        return 0
    try:
        scenario = load_scenario(args.scenario) if args.command == "run" else builtin_scenario(args.name)
        scenario = scenario.with_resolution(epsilon=args.epsilon, horizon=args.horizon,
                                            depth=args.depth, seed=args.seed)
    except (ScenarioError, UnknownScenario, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = run_scenario(scenario, timing=not args.no_timing)
    text = report.render(args.format)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if report.all_expected_met else 1


if __name__ == "__main__":
    raise SystemExit(main())
