# SPDX-FileCopyrightText: 2026-present corrperf contributors
#
# SPDX-License-Identifier: MIT
"""``corrperf`` command line.

Exit status: 0 success, 1 validation or numerical failure, 2 invalid config
or model, 3 dimension cap or no feasible evaluation path.
"""
import argparse
import json
import sys
from typing import List, Optional, Sequence

from .__about__ import __version__
from .client import MODES, EventClient
from .config import load_config
from .errors import CorrPerfError
from .runner import format_summary, run_experiment


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a config field by dotted path, value parsed as JSON (repeatable)",
    )
    parser.add_argument("--output", default=None, help="CSV path (a manifest is written next to it)")
    parser.add_argument("--events", choices=MODES, default="stderr", help="where JSON-lines events go")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corrperf",
        description="Error-correction performance under correlated spin-bath noise.",
    )
    parser.add_argument("--version", action="version", version=f"corrperf {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run the experiment described by a JSON config")
    run.add_argument("config", help="path to the experiment config")
    _common(run)

    validate = commands.add_parser("validate", help="oracle-equivalence and invariant suite")
    validate.add_argument("--tolerance", type=float, default=None, help="largest deviation accepted")
    _common(validate)

    gate = commands.add_parser("faulty-gate", help="local vs global control fidelities")
    gate.add_argument("--distribution", choices=("gaussian", "uniform"), default=None)
    gate.add_argument("--n", type=int, default=None, help="qubit count")
    gate.add_argument("--max-width", type=float, default=None, help="largest a = tau_r g * scale")
    gate.add_argument("--points", type=int, default=None)
    gate.add_argument("--squared", action="store_true", help="use cos^2 moments")
    _common(gate)
    return parser


def _overrides(args: argparse.Namespace) -> List[str]:
    """Command flags rendered as ``--set`` assignments (applied after the user's)."""
    overrides = list(args.overrides)
    if args.command == "validate":
        overrides.insert(0, "experiment=validate")
        if args.tolerance is not None:
            overrides.append(f"tolerance={args.tolerance!r}")
    elif args.command == "faulty-gate":
        overrides.insert(0, "experiment=faulty-gate")
        if args.distribution is not None:
            overrides.append(f"gate.distribution={json.dumps(args.distribution)}")
        if args.n is not None:
            overrides.append(f"gate.n={args.n}")
        if args.max_width is not None:
            overrides.append(f"gate.max_width={args.max_width!r}")
        if args.points is not None:
            overrides.append(f"gate.points={args.points}")
        if args.squared:
            overrides.append("gate.squared=true")
    if args.output is not None:
        overrides.append(f"output={json.dumps(args.output)}")
    return overrides


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    path = args.config if args.command == "run" else None
    client = EventClient(mode=args.events)
    try:
        config = load_config(path, _overrides(args))
        result = run_experiment(config, client=client)
    except CorrPerfError as exc:
        print(f"corrperf: error: {exc}", file=sys.stderr)
        return exc.exit_status
    finally:
        client.close()
    for line in format_summary(result):
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
