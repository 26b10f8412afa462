"""Schema-checked loaders for fpqsim output files.

Every file the simulator writes opens with a `# schema: fpqsim/1` line,
then `# key: value` metadata, then a CSV header and float rows. This module
refuses anything else; it does no computation beyond parsing.
"""

import csv

import numpy as np

SCHEMA = "fpqsim/1"


class SchemaError(ValueError):
    pass


def read_table(path):
    """Return (meta, columns) from one fpqsim CSV file.

    meta maps the preamble keys to their raw string values; columns maps
    header names to float arrays (empty arrays when the file has no rows).
    """
    try:
        with open(path, "r", newline="") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from exc
    if not lines or lines[0] != f"# schema: {SCHEMA}":
        raise SchemaError(f"{path} does not declare schema {SCHEMA}")
    meta = {}
    k = 1
    while k < len(lines) and lines[k].startswith("# "):
        key, sep, value = lines[k][2:].partition(": ")
        if not sep:
            raise SchemaError(f"{path}: bad metadata line {lines[k]!r}")
        meta[key] = value
        k += 1
    if k >= len(lines):
        raise SchemaError(f"{path}: missing column header")
    rows = list(csv.reader(lines[k:]))
    header = rows[0]
    try:
        data = np.array([[float(v) for v in row] for row in rows[1:]], dtype=float)
    except ValueError as exc:
        raise SchemaError(f"{path}: non-numeric row ({exc})") from exc
    if data.size == 0:
        data = data.reshape(0, len(header))
    if data.shape[1] != len(header):
        raise SchemaError(f"{path}: ragged rows")
    return meta, {name: data[:, i] for i, name in enumerate(header)}


def require_columns(path, columns, names):
    missing = [n for n in names if n not in columns]
    if missing:
        raise SchemaError(f"{path}: missing column(s) {', '.join(missing)}")


def grid_from_rows(a, b, values):
    """Rebuild the (len(A), len(B)) grid from row-major sweep columns."""
    axis_a = np.unique(a)
    axis_b = np.unique(b)
    if axis_a.size * axis_b.size != values.size:
        raise SchemaError("rows do not form a full grid")
    order = np.lexsort((b, a))
    return axis_a, axis_b, values[order].reshape(axis_a.size, axis_b.size)
