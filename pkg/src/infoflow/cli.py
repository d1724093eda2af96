"""Command line entry point: ``infoflow figure`` and ``infoflow check``.

Exit codes: 0 all certificates satisfied, 1 bound violation, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import runner

EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="infoflow", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", help="trajectory table of revivals versus their bounds")
    fig.add_argument("--config", help="JSON file with ExperimentConfig fields")
    fig.add_argument("--model", choices=sorted(runner.DEFAULT_HORIZON))
    fig.add_argument("--mu", type=float)
    fig.add_argument("--horizon", type=float)
    fig.add_argument("--grid", type=int)
    fig.add_argument("--seed", type=int)
    fig.add_argument("--quantifiers", help="comma separated quantifier names")
    fig.add_argument("--bound", choices=("tight", "general"))
    fig.add_argument("--workers", type=int)
    fig.add_argument("--output", help="output file (default: $%s or stdout)" % runner.OUTPUT_DIR_ENV)
    fig.add_argument("--format", choices=("csv", "json"))

    chk = sub.add_parser("check", help="randomized property and inequality suite")
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--trials", type=int, default=10_000)
    chk.add_argument("--output", help="write the JSON report here")
    return p


def _figure_config(args) -> runner.ExperimentConfig:
    data = {}
    if args.config:
        data = runner.ExperimentConfig.from_file(args.config).to_dict()
        if args.model and args.model != data["model"]:
            data["horizon"] = None
    for key in ("model", "mu", "horizon", "grid", "seed", "bound", "workers", "output", "format"):
        value = getattr(args, key)
        if value is not None:
            data[key] = value
    if args.quantifiers:
        data["quantifiers"] = [q.strip() for q in args.quantifiers.split(",") if q.strip()]
    return runner.ExperimentConfig.from_dict(data)


def _figure(args) -> int:
    config = _figure_config(args)
    table = runner.run_experiment(config)
    path = config.output or runner.default_output_path(config)
    text = runner.emit(table, config.format, path)
    if path is None:
        sys.stdout.write(text)
    print(json.dumps(table.summary, indent=1), file=sys.stderr)
    return EXIT_OK if table.passed else EXIT_VIOLATION


def _check(args) -> int:
    if args.trials < 1:
        raise runner.ConfigError(f"trials: must be >= 1, got {args.trials}")
    report = runner.run_property_suite(args.seed, args.trials)
    text = json.dumps(report.as_dict(), indent=1)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    print(text)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _figure(args) if args.command == "figure" else _check(args)
    except runner.ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
