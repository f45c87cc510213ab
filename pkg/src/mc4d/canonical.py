"""Canonical JSON form shared by documents, CLI output and service bodies.

Canonical text has sorted object keys, no whitespace, and numbers printed
with at most 12 significant digits. The 12-digit cutoff makes serialization
idempotent (format -> parse -> format is a fixed point) and absorbs
last-ulp float differences, so equal results serialize to equal bytes.
"""

from __future__ import annotations

import json
import math
from typing import Any


def canon_number(x: float) -> float:
    """Round a float to canonical (12 significant digit) precision."""
    if not math.isfinite(x):
        raise ValueError(f"non-finite number {x!r} has no canonical form")
    if x == 0:
        return 0.0
    return float(f"{x:.12g}")


def _format_number(x: Any) -> str:
    if isinstance(x, int):
        return str(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite number {x!r} has no canonical form")
    if x == 0:
        return "0"
    text = f"{x:.12g}"
    return text


def _emit(value: Any, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=False))
    elif isinstance(value, (int, float)):
        out.append(_format_number(value))
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for k, item in enumerate(value):
            if k:
                out.append(",")
            _emit(item, out)
        out.append("]")
    elif isinstance(value, dict):
        out.append("{")
        for k, key in enumerate(sorted(value)):
            if not isinstance(key, str):
                raise TypeError(f"object keys must be strings, got {type(key).__name__}")
            if k:
                out.append(",")
            out.append(json.dumps(key, ensure_ascii=False))
            out.append(":")
            _emit(value[key], out)
        out.append("}")
    else:
        raise TypeError(f"{type(value).__name__} is not JSON-serializable")


def canonical_dumps(value: Any) -> str:
    out: list[str] = []
    _emit(value, out)
    return "".join(out)


def canonical_bytes(value: Any) -> bytes:
    return canonical_dumps(value).encode("utf-8")
