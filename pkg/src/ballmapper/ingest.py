"""CSV ingestion and export of point clouds.

Plain RFC-4180-style CSV with a header row. Ingestion is strict: every
selected cell must parse as a number, and errors point at the exact file
line and column so a 3605-row file is debuggable. Floats are written with
full precision, so a write/read round trip reproduces the cloud exactly.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Sequence

import numpy as np

from .cloud import PointCloud

__all__ = ["ingest_csv", "ingest_csv_text", "write_cloud_csv", "cloud_csv_text"]


def _parse_id(cell: str):
    cell = cell.strip()
    try:
        return int(cell)
    except ValueError:
        return cell


def _parse_number(cell: str, line: int, column: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ValueError(
            f"line {line}, column {column!r}: not a number: {cell.strip()!r}"
        ) from None
    if not np.isfinite(value):
        raise ValueError(f"line {line}, column {column!r}: non-finite value")
    return value


def ingest_csv_text(text: str, axis_columns: Sequence[str] | None = None,
                    outcome_column: str | None = None,
                    id_column: str | None = None,
                    flag_columns: Sequence[str] = ()) -> PointCloud:
    """Parse CSV text into a cloud; see :func:`ingest_csv`."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValueError("empty file: no header row") from None
    header = [h.strip() for h in header]
    positions = {name: i for i, name in enumerate(header)}
    if len(positions) != len(header):
        raise ValueError("duplicate column names in header")

    reserved = {outcome_column, id_column, *flag_columns} - {None}
    missing = reserved - set(header)
    if axis_columns is None:
        axis_columns = [h for h in header if h not in reserved]
    else:
        axis_columns = list(axis_columns)
        missing |= set(axis_columns) - set(header)
    if missing:
        raise ValueError(f"columns not in header: {sorted(missing)}")
    if not axis_columns:
        raise ValueError("no axis columns left to ingest")

    rows, outcomes, ids = [], [], []
    flags: dict[str, list] = {name: [] for name in flag_columns}
    width = len(header)
    for line, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != width:
            raise ValueError(f"line {line}: expected {width} cells, got {len(row)}")
        rows.append([_parse_number(row[positions[c]], line, c)
                     for c in axis_columns])
        if outcome_column is not None:
            outcomes.append(_parse_number(row[positions[outcome_column]],
                                          line, outcome_column))
        if id_column is not None:
            ids.append(_parse_id(row[positions[id_column]]))
        for name in flag_columns:
            value = _parse_number(row[positions[name]], line, name)
            if value not in (0.0, 1.0):
                raise ValueError(
                    f"line {line}, column {name!r}: flag must be 0 or 1")
            flags[name].append(value)
    if not rows:
        raise ValueError("no data rows")
    if ids and len(set(ids)) != len(ids):
        raise ValueError(f"duplicate ids in column {id_column!r}")

    return PointCloud(
        points=np.array(rows, dtype=np.float64),
        axis_names=tuple(axis_columns),
        point_ids=tuple(ids) if ids else (),
        outcome=np.array(outcomes) if outcome_column is not None else None,
        binary_flags={name: np.array(vals) for name, vals in flags.items()},
    )


def ingest_csv(path, axis_columns: Sequence[str] | None = None,
               outcome_column: str | None = None,
               id_column: str | None = None,
               flag_columns: Sequence[str] = ()) -> PointCloud:
    """Read a cloud from a CSV file.

    ``axis_columns`` defaults to every column not claimed as id, outcome,
    or flag, in header order. Flag columns must hold only 0/1. Parse
    failures report the file line and column name; duplicate ids are
    rejected.
    """
    return ingest_csv_text(Path(path).read_text(encoding="utf-8"),
                           axis_columns, outcome_column, id_column,
                           flag_columns)


def cloud_csv_text(cloud: PointCloud) -> str:
    """Render a cloud as CSV: point_id, axes, Y (if any), then flags.

    Floats use ``repr`` precision, so ingesting the output reproduces the
    cloud bit for bit.
    """
    flag_names = sorted(cloud.binary_flags)
    header = ["point_id", *cloud.axis_names]
    if cloud.outcome is not None:
        header.append("Y")
    header.extend(flag_names)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for i in range(cloud.n):
        row = [cloud.point_ids[i], *(repr(float(v)) for v in cloud.points[i])]
        if cloud.outcome is not None:
            row.append(repr(float(cloud.outcome[i])))
        row.extend(str(int(cloud.binary_flags[name][i])) for name in flag_names)
        writer.writerow(row)
    return out.getvalue()


def write_cloud_csv(cloud: PointCloud, path) -> None:
    Path(path).write_text(cloud_csv_text(cloud), encoding="utf-8")
