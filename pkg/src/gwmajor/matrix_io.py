"""JSON matrix documents: ``{"rows": n, "cols": m, "data": [["p/q", ...], ...]}``.

Entries are integer or fraction strings (bare JSON integers are accepted on
input).  Decimal and float notations are refused so that no value is ever
rounded.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .matrix import RationalMatrix

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class MatrixFileError(ValueError):
    pass


def parse_entry(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise MatrixFileError(f"{where}: {value!r} is not an exact rational (use an integer or 'p/q' string)")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise MatrixFileError(f"{where}: {value!r} is not a rational string")
    match = _RATIONAL.match(value)
    if not match:
        raise MatrixFileError(f"{where}: {value!r} is not of the form 'p' or 'p/q'")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise MatrixFileError(f"{where}: {value!r} has a zero denominator")
    return Fraction(int(num), int(den) if den is not None else 1)


def matrix_from_doc(doc: Any, name: str = "matrix") -> RationalMatrix:
    if not isinstance(doc, dict):
        raise MatrixFileError(f"{name}: expected an object with rows, cols and data")
    for key in ("rows", "cols", "data"):
        if key not in doc:
            raise MatrixFileError(f"{name}: missing key {key!r}")
    rows, cols, data = doc["rows"], doc["cols"], doc["data"]
    for key, val in (("rows", rows), ("cols", cols)):
        if isinstance(val, bool) or not isinstance(val, int) or val < 1:
            raise MatrixFileError(f"{name}: {key} must be a positive integer, got {val!r}")
    if not isinstance(data, list) or len(data) != rows:
        raise MatrixFileError(f"{name}: data must be a list of {rows} rows")
    parsed = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise MatrixFileError(f"{name}: data[{i}] must be a list of {cols} entries")
        parsed.append([parse_entry(x, f"{name}: data[{i}][{j}]") for j, x in enumerate(row)])
    return RationalMatrix(parsed, shape=(rows, cols))


def matrix_to_doc(M: RationalMatrix) -> dict:
    return {"rows": M.nrows, "cols": M.ncols, "data": M.to_strings()}


def read_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise MatrixFileError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path}: invalid JSON ({exc})") from None


def load_matrix(path: str | Path) -> RationalMatrix:
    return matrix_from_doc(read_json(path), str(path))


def _format(value: Any, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_format(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        items = [pad + _format(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    # scalars and flat lists (matrix rows, vectors) stay on one line
    return json.dumps(value)


def dumps(doc: Any) -> str:
    return _format(doc, 0) + "\n"


def save_matrix(M: RationalMatrix, path: str | Path) -> None:
    Path(path).write_text(dumps(matrix_to_doc(M)))
