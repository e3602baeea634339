# app/main.py
"""
Command-line entry point.

    python -m app.main bulk problems/x3.lg
    python -m app.main boundary problems/x3.lg --backend snf --format csv
    python -m app.main selftest

Exit codes: 0 when no verdict fails, 2 when a verdict fails, 1 on error.
"""
import argparse
import sys
import time
from pathlib import Path
from typing import List, Optional

from loguru import logger

from app.cli.commands import COMMANDS, resolve_settings
from app.cli.problem import parse_problem
from app.cli.report import Report, new_report, render
from app.cli.selftest import run_selftest
from app.config import settings
from app.core.exceptions import LGError
from app.utils.helpers import sha256_text

LOG_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>"
)


def configure_logging(level: str) -> None:
    # stdout carries the report
    logger.remove()
    logger.add(sys.stderr, format=LOG_FORMAT, level=level)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lg-duality", description="Exact checks of LG bulk and boundary dualities")
    parser.add_argument("command", choices=sorted(COMMANDS) + ["selftest"])
    parser.add_argument("problem", nargs="?", help="problem file (not needed for selftest)")
    parser.add_argument("--order", choices=["degrevlex", "lex", "grlex"])
    parser.add_argument("--backend", help="residue|socle (bulk trace) or auto|snf|truncate (Hom cohomology)")
    parser.add_argument("--scale", help="volume scale c, a nonzero rational")
    parser.add_argument("--truncate", help="truncation degree N")
    parser.add_argument("--window", help="spectral window lo:hi")
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--format", choices=["json", "csv"], default=settings.REPORT_FORMAT)
    parser.add_argument("--log-level", default=settings.LOG_LEVEL)
    return parser


def execute(args: argparse.Namespace) -> Report:
    """Parse, resolve configuration, run the command and assemble the report"""
    started = time.perf_counter()
    flags = {"order": args.order, "backend": args.backend, "scale": args.scale,
             "truncate": args.truncate, "window": args.window}

    if args.command == "selftest":
        config = resolve_settings({}, flags)
        report = new_report(args.command, config)
        report.sections = run_selftest(config)
    else:
        if not args.problem:
            raise LGError(f"'{args.command}' needs a problem file")
        text = Path(args.problem).read_text(encoding="utf-8")
        spec = parse_problem(text, order=args.order)
        config = resolve_settings(spec.options, flags)
        report = new_report(args.command, config, sha256_text(text))
        logger.info(f"🚀 {args.command} on {args.problem}")
        report.sections = COMMANDS[args.command](spec, config)

    report.finalize()
    report.timing["total_seconds"] = round(time.perf_counter() - started, 3)
    return report


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        report = execute(args)
    except LGError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return 1
    except OSError as e:
        logger.error(f"❌ cannot read input: {e}")
        return 1
    except Exception as e:
        logger.error(f"❌ Unexpected error: {type(e).__name__}: {e}")
        return 1

    output = render(report, args.format)
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
        logger.info(f"✅ report written to {args.out}")
    else:
        sys.stdout.write(output)
    if report.exit_code:
        logger.warning(f"⚠️ verdict {report.verdict.value}: {report.reason}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
