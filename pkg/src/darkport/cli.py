"""Command-line interface.

Two subcommands: ``run`` executes a configured experiment and writes CSV
tables plus a manifest into a run directory; ``validate`` checks a config
file and reports violations without running anything.

Exit codes: 0 on success, 2 for configuration problems (unreadable or
invalid config, bad flag values), 3 when an experiment's model fit fails.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .errors import ConfigError, DarkportError, FitFailureError
from .experiments import (
    OUTPUT_ROOT_ENV,
    load_config,
    run_experiment,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_FIT_FAILURE = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="darkport",
        description="Dark-port parity experiments: simulation, estimation, metrology tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute an experiment described by a JSON config")
    run.add_argument("--config", required=True, help="path to the JSON config file")
    run.add_argument(
        "--out",
        default=None,
        help=f"output root directory (default: ${OUTPUT_ROOT_ENV} or ./darkport-runs)",
    )
    run.add_argument("--seed", type=int, default=None, help="override the config seed")
    run.add_argument(
        "--workers", type=int, default=None, help="override the config worker count"
    )
    run.add_argument(
        "--flat",
        action="store_true",
        help="write outputs directly into the output root instead of a timestamped subdirectory",
    )

    val = sub.add_parser("validate", help="check a config file without running")
    val.add_argument("--config", required=True, help="path to the JSON config file")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.command == "validate":
        problems = config.validate()
        if problems:
            for p in problems:
                print(f"invalid: {p}", file=sys.stderr)
            return EXIT_CONFIG
        print(f"ok: {args.config} is a valid {config.mode} config")
        return EXIT_OK

    overrides = {}
    if args.seed is not None:
        if args.seed < 0:
            print("config error: --seed must be >= 0", file=sys.stderr)
            return EXIT_CONFIG
        overrides["seed"] = args.seed
    if args.workers is not None:
        if args.workers < 1:
            print("config error: --workers must be >= 1", file=sys.stderr)
            return EXIT_CONFIG
        overrides["workers"] = args.workers
    if overrides:
        config = replace(config, **overrides)

    try:
        manifest = run_experiment(config, out_root=args.out, flat=args.flat)
    except FitFailureError as exc:
        print(f"fit failure: {exc}", file=sys.stderr)
        return EXIT_FIT_FAILURE
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DarkportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    print(f"wrote {len(manifest.outputs)} tables to {manifest.output_directory}")
    for name in manifest.outputs:
        print(f"  {name}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
