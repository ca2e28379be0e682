"""Canonical JSON for reports: sorted keys, exact rationals as ``"p/q"`` strings."""

from __future__ import annotations

import json
from fractions import Fraction

from .graph import Graph, OrientedEdge, format_graph


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        raise TypeError("floating point values are not allowed in reports")
    if isinstance(obj, Graph):
        return format_graph(obj)
    if isinstance(obj, OrientedEdge):
        return str(obj)
    if hasattr(obj, "as_dict"):
        return to_jsonable(obj.as_dict())
    if isinstance(obj, dict):
        return {str(to_jsonable(k)): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_rational(s) -> Fraction:
    """Inverse of the rational encoding: ints, ``"p/q"`` or ``"p"`` strings."""
    if isinstance(s, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"not an exact rational: {s!r}")


def to_text(obj, indent: int = 0) -> str:
    """Human-readable ``key: value`` rendering of the JSON form."""
    data = to_jsonable(obj)
    lines: list[str] = []
    _render(data, indent, lines)
    return "\n".join(lines) + "\n"


def _render(data, indent, lines, key=None):
    pad = "  " * indent
    if key == "-":
        label = f"{pad}- "
    else:
        label = f"{pad}{key}: " if key is not None else pad
    if isinstance(data, dict):
        if key is not None:
            lines.append(f"{pad}{key}" if key == "-" else f"{pad}{key}:")
            indent += 1
        for k in sorted(data):
            _render(data[k], indent, lines, k)
    elif isinstance(data, list) and any(isinstance(x, (dict, list)) for x in data):
        lines.append(f"{pad}{key}:" if key is not None else pad.rstrip())
        for x in data:
            _render(x, indent + 1, lines, "-")
    elif isinstance(data, list):
        lines.append(label + ", ".join(str(x) for x in data))
    elif isinstance(data, str) and "\n" in data:
        lines.append(f"{pad}{key}:" if key is not None else "")
        for row in data.rstrip("\n").splitlines():
            lines.append("  " * (indent + 1) + row)
    elif isinstance(data, bool):
        lines.append(label + ("yes" if data else "no"))
    else:
        lines.append(label + ("-" if data is None else str(data)))
