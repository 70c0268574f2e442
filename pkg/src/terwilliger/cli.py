"""
Command-line front end.

    terwilliger report --u 2,3 --p 2 [--base-point 0,0] [--json PATH]
    terwilliger verify --u 2,3 --p 2 [--max-points 4096]
    terwilliger sweep --n-max 3 --values 2,3,4 --p 0,2,3,5 [--verify]

stdout carries the JSON document (JSON lines for ``sweep``); progress and logs go
to stderr. Exit codes: 0 ok, 1 verification failure, 2 usage, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from terwilliger.config import report_indent
from terwilliger.errors import FieldError, OracleLimitError, ParameterError
from terwilliger.log import LoggingConfigurator
from terwilliger.report import CHECKS, run_report, run_sweep, run_verify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE_CAP = 3


def _int_list(text: str) -> List[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", default=None,
                        help="console and file log level (default: [LOG] LEVEL of the settings file)")
    common.add_argument("--log-file", action="store_true",
                        help="also write a daily rotating log file")

    parser = argparse.ArgumentParser(
        prog="terwilliger",
        description="Terwilliger algebras of factorial association schemes over F_p or Q.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    report = commands.add_parser("report", parents=[common], help="closed-form invariant report")
    report.add_argument("--u", required=True, help="factor sizes, e.g. 2,3")
    report.add_argument("--p", required=True, help="characteristic: 0 or a prime")
    report.add_argument("--base-point", default=None, help="base point, e.g. 0,0 (default: origin)")
    report.add_argument("--json", dest="json_path", type=Path, default=None,
                        help="write the report to this file instead of stdout")

    verify = commands.add_parser("verify", parents=[common], help="oracle verification suite")
    verify.add_argument("--u", required=True, help="factor sizes, e.g. 2,3")
    verify.add_argument("--p", required=True, help="characteristic: 0 or a prime")
    verify.add_argument("--max-points", type=int, default=None,
                        help="oracle cap on |X| (TERWILLIGER_MAX_POINTS takes precedence)")
    verify.add_argument("--base-point", default=None, help="base point of T(x) (default: origin)")
    verify.add_argument("--check", dest="checks", action="append", choices=[name for name, _ in CHECKS],
                        help="run only this check (repeatable)")

    sweep = commands.add_parser("sweep", parents=[common], help="reports over a parameter grid")
    sweep.add_argument("--n-max", type=int, default=3, help="largest number of factors")
    sweep.add_argument("--values", type=_int_list, default=[2, 3, 4], help="factor sizes to combine")
    sweep.add_argument("--p", dest="primes", type=_int_list, default=[0, 2, 3, 5],
                       help="characteristics, e.g. 0,2,3,5")
    sweep.add_argument("--verify", action="store_true", help="also run the verification suite")
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    LoggingConfigurator.configure_from_settings(level=args.log_level, log_file=args.log_file or None)


def _emit(document: dict, path: Optional[Path] = None) -> None:
    text = json.dumps(document, indent=report_indent() or None)
    if path is None:
        sys.stdout.write(text + "\n")
    else:
        path.write_text(text + "\n", encoding="utf-8")
        logger.info("report written to %s", path)


def cmd_report(args: argparse.Namespace) -> int:
    report = run_report(args.u, args.p, args.base_point)
    _emit(report.to_dict(), args.json_path)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    result = run_verify(args.u, args.p, max_points=args.max_points,
                        base_point=args.base_point, only=args.checks)
    _emit(result.to_dict())
    return EXIT_OK if result.overall else EXIT_VERIFY_FAILED


def cmd_sweep(args: argparse.Namespace) -> int:
    status = EXIT_OK
    for record in run_sweep(args.values, args.n_max, args.primes, verify=args.verify):
        sys.stdout.write(json.dumps(record) + "\n")
        sys.stdout.flush()
        if "verify" in record and not record["verify"]["overall"]:
            status = EXIT_VERIFY_FAILED
    return status


COMMANDS = {"report": cmd_report, "verify": cmd_verify, "sweep": cmd_sweep}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    try:
        return COMMANDS[args.command](args)
    except (ParameterError, FieldError) as e:
        logger.error("%s", e)
        sys.stderr.write(f"terwilliger: error: {e}\n")
        return EXIT_USAGE
    except OracleLimitError as e:
        logger.error("%s", e)
        sys.stderr.write(f"terwilliger: {e}\n")
        return EXIT_RESOURCE_CAP


if __name__ == "__main__":
    sys.exit(main())
