"""Trace serialization: dense 0/1 CSV with an explicit step column.

Format:

    step,<clk1>,<clk2>,...
    0,0,1,...
    1,1,0,...

LF line endings, no quoting (clock names are identifiers), row r holds
step index r.  The explicit step column is redundant but catches
truncated or reordered files cheaply.
"""

from __future__ import annotations

import csv
import io
from contextlib import contextmanager
from os import PathLike
from typing import IO, Iterator, Union

from .clocks import Trace
from .errors import DeclarationError, TraceFormatError

__all__ = ["write_trace", "read_trace"]

Source = Union[str, PathLike, IO[str]]


@contextmanager
def _opened(target: Source, mode: str) -> Iterator[IO[str]]:
    if isinstance(target, (str, PathLike)):
        with open(target, mode, encoding="utf-8", newline="") as handle:
            yield handle
    else:
        yield target


def write_trace(trace: Trace, sink: Source) -> None:
    """Write ``trace`` as canonical CSV to a path or text stream."""
    with _opened(sink, "w") as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(("step", *trace.clocks))
        clocks = trace.clocks
        for i, ticks in enumerate(trace.tick_sets()):
            writer.writerow((i, *("1" if c in ticks else "0" for c in clocks)))


def read_trace(source: Source) -> Trace:
    """Parse a trace CSV, validating structure cell by cell.

    Raises TraceFormatError (with the 1-based line number) on a
    malformed header, a non-0/1 cell, a ragged row, or a step index
    that does not match the row position.
    """
    with _opened(source, "r") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise TraceFormatError("missing header row", 1) from None
        if not header or header[0] != "step":
            raise TraceFormatError("header must start with 'step'", 1)
        try:
            trace = Trace(header[1:])
        except DeclarationError as exc:
            raise TraceFormatError(f"bad header: {exc}", 1) from None
        width = len(header)
        expected_step = 0
        for row in reader:
            line = reader.line_num
            if len(row) != width:
                raise TraceFormatError(
                    f"row has {len(row)} fields, expected {width}", line
                )
            if row[0] != str(expected_step):
                raise TraceFormatError(
                    f"non-consecutive step index {row[0]!r}, expected {expected_step}",
                    line,
                )
            ticks = []
            for name, cell in zip(trace.clocks, row[1:]):
                if cell == "1":
                    ticks.append(name)
                elif cell != "0":
                    raise TraceFormatError("cell must be 0 or 1", line)
            trace.append(ticks)
            expected_step += 1
        return trace


def trace_to_string(trace: Trace) -> str:
    """Render a trace to its canonical CSV text."""
    buffer = io.StringIO()
    write_trace(trace, buffer)
    return buffer.getvalue()
