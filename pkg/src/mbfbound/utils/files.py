## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
import csv
import io
import os
import tempfile
from pathlib import Path

## third-party
import numpy

## local
from mbfbound.errors import ParseError

##
## === ATOMIC WRITES
##


def write_atomic(
    path: str | Path,
    content: str | bytes,
) -> Path:
    """
    Writes `content` to a temporary file next to `path`, then renames it into place, so readers only ever see
    the old file or the complete new one.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = content.encode("utf-8") if isinstance(content, str) else content
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    return path


##
## === DATA FILES
##


def parse_matrix_csv(
    text: str,
    source: str = "<string>",
    header: bool = False,
) -> numpy.ndarray:
    """
    Parses comma-separated numeric rows (one observation per line) into an observations-by-variables matrix.
    Blank lines are ignored; ragged rows and non-numeric fields raise `ParseError` naming the line.
    """
    rows: list[list[float]] = []
    num_cols: int | None = None
    reader = csv.reader(io.StringIO(text))
    for line_number, fields in enumerate(reader, start=1):
        if header and line_number == 1: continue
        if not fields or all(field.strip() == "" for field in fields): continue
        if num_cols is None:
            num_cols = len(fields)
        elif len(fields) != num_cols:
            raise ParseError(f"{source}: line {line_number}: expected {num_cols} values, but got {len(fields)}.")
        row: list[float] = []
        for col_number, field in enumerate(fields, start=1):
            try:
                value = float(field.strip())
            except ValueError:
                raise ParseError(
                    f"{source}: line {line_number}, column {col_number}: `{field.strip()}` is not a number.",
                ) from None
            if not numpy.isfinite(value):
                raise ParseError(f"{source}: line {line_number}, column {col_number}: `{field.strip()}` is not finite.")
            row.append(value)
        rows.append(row)
    if not rows:
        raise ParseError(f"{source}: no data rows found.")
    return numpy.array(rows, dtype=numpy.float64)


def read_matrix_csv(
    path: str | Path,
    header: bool = False,
) -> numpy.ndarray:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as err:
        raise ParseError(f"{path}: not a UTF-8 text file.") from err
    return parse_matrix_csv(text, source=str(path), header=header)


## } MODULE
