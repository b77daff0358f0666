"""
CSV output shared by the gap tables, sweeps and the command line.

Numbers are written with a fixed number of significant digits (the `significant_digits` key of the `[cli]` config
section), so the same computation always produces byte-identical files.
"""
import csv
import io
import math
import sys
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from autohardy.util import config_util
from autohardy.util.log_space import FLOAT_LOG_LIMIT, LogMagnitude


def format_value(value, digits: Optional[int] = None) -> str:
    if digits is None:
        digits = config_util.config_int("cli", "significant_digits")

    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, LogMagnitude):
        if abs(value.log) < FLOAT_LOG_LIMIT:
            return format_value(float(value), digits=digits)
        sign = "-" if value.sign < 0 else ""
        return f"{sign}exp({value.log:.{digits}g})"

    value = float(value)
    if math.isnan(value):
        return "nan"
    return f"{value:.{digits}g}"


def format_rows(header: Sequence[str], rows: Iterable[Sequence], digits: Optional[int] = None) -> str:
    """
    The CSV text of a header and rows of values, with `\\n` line endings.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(value, digits=digits) for value in row])
    return buffer.getvalue()


def write_text(text: str, out: Optional[Union[str, Path]] = None):
    """
    Write CSV text to the file `out`, or to standard output when no path is given.
    """
    if out is None:
        sys.stdout.write(text)
        return

    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        f.write(text)
