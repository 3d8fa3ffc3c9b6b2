"""Deterministic text serialization for CSV and JSON outputs.

All floats are written with 17 significant digits (%.17g), which round-trips
IEEE doubles exactly, so identical inputs always produce byte-identical
files. JSON output maps non-finite floats to null; CSV writes them as
nan/inf per C-locale conventions.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np


def fmt_float(x: float) -> str:
    """17-significant-digit decimal form of a double."""
    return format(float(x), ".17g")


def _emit(obj: Any, parts: list[str], indent: int, level: int) -> None:
    pad = " " * (indent * level)
    pad_in = " " * (indent * (level + 1))
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, float):
        parts.append(fmt_float(obj) if math.isfinite(obj) else "null")
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            parts.append("{}")
            return
        parts.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            parts.append(pad_in + json.dumps(key) + ": ")
            _emit(value, parts, indent, level + 1)
            parts.append(",\n" if i < len(obj) - 1 else "\n")
        parts.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            parts.append("[]")
            return
        # numeric rows stay on one line for readability
        if all(
            (isinstance(v, (int, float)) and not isinstance(v, bool)) or v is None
            for v in obj
        ):
            inner = ", ".join(
                fmt_float(v) if isinstance(v, float) and math.isfinite(v)
                else ("null" if v is None or isinstance(v, float) else str(v))
                for v in obj
            )
            parts.append("[" + inner + "]")
            return
        parts.append("[\n")
        for i, value in enumerate(obj):
            parts.append(pad_in)
            _emit(value, parts, indent, level + 1)
            parts.append(",\n" if i < len(obj) - 1 else "\n")
        parts.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} to JSON")


def dumps_json(obj: Any, indent: int = 2) -> str:
    """Render *obj* as JSON text with %.17g floats, trailing newline."""
    parts: list[str] = []
    _emit(obj, parts, indent, 0)
    parts.append("\n")
    return "".join(parts)
