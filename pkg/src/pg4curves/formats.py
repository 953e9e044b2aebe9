"""Deterministic file formats.

Floats are written with 17 significant digits and no locale, JSON keys in
insertion order, and files are replaced atomically.
"""

from __future__ import annotations

import csv
import io
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .dsl import load_curve as _load_expression_curve
from .errors import ParseError

SCHEMA = "pg4-curves/1"

FRAME_COLUMNS = (
    ["s", "x", "y", "z", "w"]
    + [f"{v}_{c}" for v in ("T", "N", "B1", "B2") for c in "xyzw"]
    + ["kappa", "tau", "sigma", "eps1", "eps2", "eps3"]
)


def fmt_float(v: float) -> str:
    if not math.isfinite(v):
        return "nan" if math.isnan(v) else ("inf" if v > 0 else "-inf")
    if v == 0.0:
        return "0"
    return format(v, ".17g")


def _json(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return fmt_float(v) if math.isfinite(v) else "null"
    if isinstance(obj, str):
        return _json_string(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_json_string(str(k))}: {_json(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool)
               for v in obj):
            return "[" + ", ".join(_json(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _json(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "to_dict"):
        return _json(obj.to_dict(), indent, level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


_ESCAPES = {'"': '\\"', "\\": "\\\\", "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _json_string(s: str) -> str:
    out = []
    for ch in s:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    return '"' + "".join(out) + '"'


def dumps(obj, indent: int = 2) -> str:
    return _json(obj, indent, 0) + "\n"


def csv_text(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt_float(float(v)) if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()


def flatten(obj, prefix="") -> list:
    """Nested dicts/lists as (dotted key, scalar) pairs."""
    out = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.extend(flatten(v, f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            out.extend(flatten(v, f"{prefix}[{i}]"))
    else:
        out.append((prefix, obj))
    return out


def flat_csv(obj) -> str:
    rows = []
    for k, v in flatten(obj):
        if v is None:
            v = ""
        elif isinstance(v, bool):
            v = "true" if v else "false"
        rows.append((k, v))
    return csv_text(["key", "value"], rows)


def write_atomic(path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- reading ---------------------------------------------------------------------------

def read_table(path):
    """Tabulated curve from a CSV with at least ``s,x,y,z,w`` columns.

    ``T_x..T_w`` columns, when present, are used as tangent samples.
    """
    from .integrator import TabulatedCurve

    text = Path(path).read_text()
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty CSV file") from None
    header = [h.strip() for h in header]
    need = ["s", "x", "y", "z", "w"]
    for i, name in enumerate(need):
        if name not in header:
            raise ParseError(f"missing column {name!r}", 1, 1, (f"'{n}'" for n in need))
    idx = {h: i for i, h in enumerate(header)}
    tan_cols = [f"T_{c}" for c in "xyzw"]
    has_t = all(c in idx for c in tan_cols)
    s, pts, tans = [], [], []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            vals = [float(v) for v in row]
        except ValueError as err:
            col = next((k + 1 for k, v in enumerate(row) if not _is_float(v)), 1)
            raise ParseError(f"bad number: {err}", lineno, col) from None
        if len(vals) != len(header):
            raise ParseError(f"expected {len(header)} fields, found {len(vals)}", lineno, 1)
        s.append(vals[idx["s"]])
        pts.append([vals[idx[c]] for c in "xyzw"])
        if has_t:
            tans.append([vals[idx[c]] for c in tan_cols])
    return TabulatedCurve(s, pts, tans if has_t else None, label=Path(path).stem)


def _is_float(v) -> bool:
    try:
        float(v)
        return True
    except ValueError:
        return False


def load_any_curve(path):
    """``.csv`` gives a tabulated curve; ``.json`` and text go through the parser."""
    if Path(path).suffix.lower() == ".csv":
        return read_table(path)
    return _load_expression_curve(path)
