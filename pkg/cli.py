"""Command-line front end — eval, repl and test-corpus subcommands."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Optional, Sequence

import mpmath

import config
import scalar
from errors import EXIT_OK, EXIT_USER, TransseriesError
from expression import evaluate_text
from formatting import format_monomial, format_series, to_record
from models import AbelResult, Context, ScalarMode
from series import Series, agree

try:
    import readline  # noqa: F401

    is_rl_available = True
except ModuleNotFoundError:
    is_rl_available = False

logger = logging.getLogger(__name__)

EXIT_CORPUS_FAILED = 1


# ---------------------------------------------------------------------------
# Arguments / context
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transseries", description="truncated log-exp transseries calculator"
    )
    parser.add_argument("--max-terms", type=int, default=config.MAX_TERMS)
    parser.add_argument("--log-depth", type=int, default=config.MAX_LOG_DEPTH)
    parser.add_argument("--exp-height", type=int, default=config.MAX_EXP_HEIGHT)
    parser.add_argument("--fixpoint-iters", type=int, default=config.MAX_FIXPOINT_ITERS)
    parser.add_argument(
        "--coeff", choices=[m.value for m in ScalarMode], default=config.SCALAR_MODE
    )
    parser.add_argument("--prec", type=int, default=config.PRECISION_BITS)
    parser.add_argument("--tol", default=config.ZERO_TOL)
    parser.add_argument(
        "--snap", action="store_true", default=config.SNAP_COEFFICIENTS,
        help="round float coefficients onto nearby simple rationals",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--log-level", default=config.LOG_LEVEL)

    sub = parser.add_subparsers(dest="command", required=True)
    p_eval = sub.add_parser("eval", help="evaluate one expression")
    p_eval.add_argument("expr")
    p_eval.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sub.add_parser("repl", help="interactive session")
    p_corpus = sub.add_parser("test-corpus", help="check 'expr => expected' lines")
    p_corpus.add_argument("path")
    p_corpus.add_argument("--workers", type=int, default=4)
    p_corpus.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    return parser


def context_from_args(args: argparse.Namespace) -> Context:
    return Context(
        max_terms=args.max_terms,
        max_log_depth=args.log_depth,
        max_exp_height=args.exp_height,
        max_fixpoint_iters=args.fixpoint_iters,
        scalar_mode=ScalarMode(args.coeff),
        precision_bits=args.prec,
        zero_tol=args.tol,
        snap_coefficients=args.snap,
    )


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render_value(value: Any) -> str:
    if isinstance(value, AbelResult):
        return format_series(value.V)
    if isinstance(value, Series):
        return format_series(value)
    if hasattr(value, "value"):
        return str(value.value)
    return scalar.render(value)


def value_record(value: Any) -> dict:
    diagnostics: dict = {}
    series = None
    if isinstance(value, AbelResult):
        series = value.V
        diagnostics = {
            "depth": value.depth,
            "residual": format_series(value.residual),
            "norm_constant": scalar.render(value.norm_constant),
        }
    elif isinstance(value, Series):
        series = value
    if series is not None:
        diagnostics["record"] = to_record(series)
    cutoff = None
    if series is not None and series.cutoff is not None:
        cutoff = format_monomial(series.cutoff)
    return {"result": render_value(value), "cutoff": cutoff, "diagnostics": diagnostics}


def display_error(error: TransseriesError, text: str = "") -> None:
    print(error.diagnostic(), file=sys.stderr)
    if text and error.position is not None:
        print(f"  {text}", file=sys.stderr)
        print("  " + " " * error.position + "^", file=sys.stderr)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def run_eval(expr: str, as_json: bool) -> int:
    try:
        value = evaluate_text(expr)
    except TransseriesError as error:
        if as_json:
            print(json.dumps({"error": error.code, "message": error.message}))
        display_error(error, expr)
        return error.exit_code
    if as_json:
        print(json.dumps(value_record(value)))
    else:
        print(render_value(value))
    return EXIT_OK


def run_repl(ctx: Context) -> int:
    print(f"transseries ({ctx.scalar_mode.value}, max_terms={ctx.max_terms}); :q to quit")
    while True:
        try:
            line = input("ts> ").strip()
        except (EOFError, KeyboardInterrupt):
            print()
            return EXIT_OK
        if not line:
            continue
        if line in (":q", ":quit"):
            return EXIT_OK
        if line == ":ctx":
            print(ctx)
            continue
        try:
            print(render_value(evaluate_text(line)))
        except TransseriesError as error:
            display_error(error, line)


def _check_case(ctx: Context, expr: str, expected: str) -> tuple[bool, str]:
    with ctx.activate():
        try:
            actual = evaluate_text(expr)
        except TransseriesError as error:
            return error.code == expected.strip(), error.code
        try:
            wanted = evaluate_text(expected)
        except TransseriesError:
            wanted = None
        if isinstance(wanted, (Series, AbelResult)) and isinstance(actual, (Series, AbelResult)):
            a = actual.V if isinstance(actual, AbelResult) else actual
            w = wanted.V if isinstance(wanted, AbelResult) else wanted
            return agree(a, w), format_series(a)
        text = render_value(actual)
        return text == expected.strip(), text


def read_corpus(path: str) -> list[tuple[int, str, str]]:
    cases = []
    with open(path, encoding="utf-8") as handle:
        for number, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=>" not in line:
                logger.warning("line %d has no '=>', skipped", number)
                continue
            expr, expected = line.split("=>", 1)
            cases.append((number, expr.strip(), expected.strip()))
    return cases


def run_corpus(ctx: Context, path: str, workers: int, as_json: bool) -> int:
    cases = read_corpus(path)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        results = list(pool.map(lambda case: _check_case(ctx, case[1], case[2]), cases))
    failures = 0
    report = []
    for (number, expr, expected), (ok, actual) in zip(cases, results):
        if not ok:
            failures += 1
        report.append({"line": number, "expr": expr, "expected": expected, "actual": actual, "ok": ok})
        if not as_json:
            status = "ok  " if ok else "FAIL"
            print(f"{status} {number}: {expr} => {actual}")
    if as_json:
        print(json.dumps({"cases": report, "failures": failures}))
    else:
        print(f"{len(cases) - failures}/{len(cases)} passed")
    return EXIT_OK if failures == 0 else EXIT_CORPUS_FAILED


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USER if exc.code else EXIT_OK
    logging.basicConfig(
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
    )
    try:
        ctx = context_from_args(args)
    except ValueError as exc:
        print(f"error[Config]: {exc}", file=sys.stderr)
        return EXIT_USER
    mpmath.mp.prec = ctx.precision_bits
    with ctx.activate():
        if args.command == "eval":
            return run_eval(args.expr, args.json)
        if args.command == "repl":
            return run_repl(ctx)
        return run_corpus(ctx, args.path, args.workers, args.json)


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
