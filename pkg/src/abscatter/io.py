"""Deterministic text serialization shared by the CLI and the data types.

Every float is written in scientific notation with 17 significant digits,
which round-trips IEEE doubles exactly and is platform independent.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np


def format_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.16e}"


def _json_float(x: float) -> str:
    if not math.isfinite(x):
        # JSON has no literal for these; quoted keeps the document valid
        return json.dumps(format_float(x))
    return format_float(x)


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """Serialize ``obj`` as JSON with fixed float formatting."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _json_float(float(obj))
    if isinstance(obj, Fraction):
        return json.dumps(f"{obj.numerator}/{obj.denominator}")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]], comment: str | None = None) -> str:
    lines = []
    if comment is not None:
        lines.append(f"# {comment}")
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_csv_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _csv_cell(v: Any) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format_float(v)
    return str(v)


def read_csv(text: str) -> tuple[dict[str, str], list[str], np.ndarray]:
    """Parse CSV written by :func:`csv_text`.

    Returns the ``key=value`` pairs from leading comment lines, the header
    and a float array of the data rows.
    """
    meta: dict[str, str] = {}
    lines = [ln for ln in text.splitlines() if ln.strip()]
    while lines and lines[0].startswith("#"):
        for token in lines.pop(0)[1:].split():
            if "=" in token:
                key, value = token.split("=", 1)
                meta[key] = value
    header = lines[0].split(",")
    data = np.array([[float(c) for c in ln.split(",")] for ln in lines[1:]], dtype=float)
    return meta, header, data.reshape(-1, len(header))
