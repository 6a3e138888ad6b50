# cli.py
"""
Command-line entry point.

  python cli.py analyze "2:2:0,0,0,2"
  python cli.py gray --tt "3:3:01234567"
  python cli.py verify k4 --n 2
  python cli.py search --n 2 --k 3 --mode exhaustive --predicate gbent --out g.jsonl

JSON goes to stdout, logs to stderr. Exit codes: 0 success, 1 verification
failure (discrepancy, invariant violation, infeasible search), 2 bad input.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

import settings
from errors import GbentError, InfeasibleSearch, InvariantViolation, TableFormatError
from gbf import GbfTable, gbf_from_json, gbf_parse
from report import analyze
from search import SearchSpec, run_search
from verify import SUITES, run_suite

logger = logging.getLogger("gbent.cli")


def read_table(text: Optional[str] = None, path: Optional[str] = None) -> GbfTable:
    """A table from inline text or a file, in text or JSON form."""
    if path is not None:
        text = Path(path).read_text(encoding="utf-8")
    if text is None or not text.strip():
        raise TableFormatError("no table given; pass it inline, with --tt, or with --file")
    text = text.strip()
    if text.startswith("{"):
        return gbf_from_json(text)
    return gbf_parse(text)


def _emit(obj):
    print(json.dumps(obj, sort_keys=True))


def _add_table_args(p):
    p.add_argument("table", nargs="?", help="truth table 'k:n:values' or its JSON form")
    p.add_argument("--tt", help="truth table given inline")
    p.add_argument("--file", help="read the table from a file")


def _make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gbent",
        description="Exact analysis of generalized bent functions f: F_2^n -> Z_(2^k)",
    )
    p.add_argument("--log-level", default=None, type=str.upper, choices=settings.LOG_LEVELS,
                   help="override GBENT_LOG_LEVEL")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("analyze", help="classification, theorem verdicts and spectrum of one table")
    _add_table_args(s)
    s.add_argument("--approx", action="store_true", help="add display-only complex approximations")
    s.add_argument("--gray-only", action="store_true", help="report only the Gray image")

    s = sub.add_parser("gray", help="Gray image class and Walsh value distribution")
    _add_table_args(s)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("suite", choices=sorted(SUITES))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, default=None, help="level (defaults to the suite's own)")
    s.add_argument("--samples", type=int, default=1000, help="random and family samples when not exhaustive")
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("search", help="stream candidates through a predicate into JSONL")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--mode", default="exhaustive", choices=["exhaustive", "random", "construct"])
    s.add_argument("--predicate", default="gbent",
                   help="gbent, gsemibent, plateaued:<s> or theorem-discrepancy")
    s.add_argument("--count", type=int, default=1000, help="candidates in random and construct mode")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--family", default=None, help="construct family: mm, sparse or gray")
    s.add_argument("--out", default=None, help="JSONL sink")
    s.add_argument("--start", type=int, default=0)
    s.add_argument("--stop", type=int, default=None)
    s.add_argument("--resume", action="store_true", help="continue after the last checkpoint in --out")
    return p


def cmd_analyze(args) -> int:
    f = read_table(args.tt or args.table, args.file)
    gray_only = args.cmd == "gray" or getattr(args, "gray_only", False)
    report = analyze(f, approx=getattr(args, "approx", False), gray_only=gray_only)
    print(report.to_json())
    return 0


def cmd_verify(args) -> int:
    summary = run_suite(args.suite, args.n, args.k, samples=args.samples, seed=args.seed)
    _emit(summary.model_dump())
    if not summary.ok:
        logger.error("Suite %s: %d discrepancies, first %s", summary.suite, summary.discrepancies,
                     summary.first_witness)
        return 1
    return 0


def cmd_search(args) -> int:
    spec = SearchSpec(
        n=args.n, k=args.k, mode=args.mode, predicate=args.predicate, count=args.count,
        seed=args.seed, family=args.family, output=args.out, start=args.start, stop=args.stop,
        resume=args.resume,
    )
    _emit(run_search(spec))
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "gray": cmd_analyze,
    "verify": cmd_verify,
    "search": cmd_search,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = _make_parser().parse_args(argv)
    settings.setup_logging(args.log_level)
    try:
        return COMMANDS[args.cmd](args)
    except (InfeasibleSearch, InvariantViolation) as exc:
        logger.error("%s", exc)
        _emit({"error": str(exc), "type": type(exc).__name__})
        return 1
    except (GbentError, ValidationError, OSError) as exc:
        logger.error("Bad input: %s", exc)
        _emit({"error": str(exc), "type": type(exc).__name__})
        return 2


if __name__ == "__main__":
    sys.exit(main())
