import argparse
import functools
import logging
import sys
from pathlib import Path

import numpy as np

from rankcode.errors import (
    EXIT_DECODE,
    EXIT_PARSE,
    EXIT_SHAPE,
    DecodingFailure,
    FieldMismatchError,
    FormatError,
    InconsistentSystemError,
    OracleLimitError,
    ParameterError,
    ShapeError,
)
from rankcode.gabidulin import GabidulinCode


def setup_logging(args):
    level = logging.WARNING
    if args.quiet:
        level = logging.ERROR
    elif args.verbose == 1:
        level = logging.INFO
    elif args.verbose >= 2:
        level = logging.DEBUG

    logging.basicConfig(level=level, format="%(message)s")
    return logging.getLogger(__name__)


def add_common_args(parser):
    parser.add_argument("-q", "--quiet", action="store_true", help="Quiet output")
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Increase verbosity (-v, -vv)",
    )


def add_decimals_arg(parser):
    parser.add_argument(
        "--decimals",
        type=int,
        help="Number of decimal places in tables (default: 3 for quiet, 5 for normal, raw for verbose)",
    )


def format_dataframe(df, args):
    decimals = getattr(args, "decimals", None)
    if decimals is None:
        if args.quiet:
            decimals = 3
        elif args.verbose == 0:
            decimals = 5

    if decimals is not None:
        df = df.round(decimals)

    return df.fillna("")


def code_spec(text: str) -> GabidulinCode:
    """argparse type for ``gab:q=..,m=..,n=..,k=..`` strings."""
    try:
        return GabidulinCode.from_spec(text)
    except (FormatError, ParameterError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


EXIT_CODES = (
    (FormatError, EXIT_PARSE),
    (OSError, EXIT_PARSE),
    (DecodingFailure, EXIT_DECODE),
    (ShapeError, EXIT_SHAPE),
    (ParameterError, EXIT_SHAPE),
    (FieldMismatchError, EXIT_SHAPE),
    (InconsistentSystemError, EXIT_SHAPE),
    (OracleLimitError, EXIT_SHAPE),
)


def exit_on_error(run):
    """Log known failures of a command and turn them into exit codes."""

    @functools.wraps(run)
    def wrapper(args):
        logger = setup_logging(args)
        try:
            return run(args, logger) or 0
        except tuple(cls for cls, _ in EXIT_CODES) as e:
            logger.error(f"Error: {e}")
            return next(code for cls, code in EXIT_CODES if isinstance(e, cls))

    return wrapper


# -- packet files -------------------------------------------------------------
#
# One row per line, base-q digits. Digits are written back to back when
# q <= 10 and separated by single spaces otherwise. Blank lines and lines
# starting with '#' are ignored.


def format_rows(M) -> str:
    q = type(M).order
    rows = np.asarray(M).view(np.ndarray).astype(np.int64)
    sep = "" if q <= 10 else " "
    return "".join(sep.join(str(int(v)) for v in row) + "\n" for row in rows)


def _parse_line(line: str, q: int, lineno: int) -> list[int]:
    tokens = line.split() if q > 10 else list("".join(line.split()))
    try:
        values = [int(token) for token in tokens]
    except ValueError:
        raise FormatError(f"line {lineno}: not a base-{q} digit row: {line!r}") from None
    bad = [v for v in values if not 0 <= v < q]
    if bad:
        raise FormatError(f"line {lineno}: digit {bad[0]} out of range for q={q}")
    return values


def parse_rows(text: str, GF, cols: int, rows: int | None = None):
    """Rows of ``cols`` base-q digits; ``rows`` fixes the row count when given.

    Malformed digits and a wrong row count raise FormatError, a row of the
    wrong width raises ShapeError.
    """
    parsed = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        values = _parse_line(stripped, GF.order, lineno)
        if len(values) != cols:
            raise ShapeError(f"line {lineno}: expected {cols} digits, got {len(values)}")
        parsed.append(values)
    if rows is not None and len(parsed) != rows:
        raise FormatError(f"expected {rows} rows, got {len(parsed)} (truncated input?)")
    return GF(np.array(parsed, dtype=np.int64).reshape(len(parsed), cols))


def read_rows(path, GF, cols: int, rows: int | None = None):
    text = sys.stdin.read() if str(path) == "-" else Path(path).read_text()
    return parse_rows(text, GF, cols, rows)


def write_rows(path, M):
    text = format_rows(M)
    if path is None or str(path) == "-":
        print(text, end="")
    else:
        Path(path).write_text(text)
