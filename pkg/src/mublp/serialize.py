"""Deterministic JSON rendering.

``json.dumps`` prints floats with the shortest round-tripping repr, which is
not a fixed width.  Output files here are compared byte-for-byte (golden
files, determinism across worker counts), so floats are always rendered with
17 significant digits, which round-trips IEEE doubles exactly.  Fractions are
rendered as "p/q" strings.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"non-finite float in output: {x!r}")
    return format(float(x), ".17g")


def _render(value, out: list[str], indent: int, level: int) -> None:
    pad = " " * (indent * (level + 1)) if indent else ""
    close_pad = " " * (indent * level) if indent else ""
    nl = "\n" if indent else ""
    sep = "," + nl
    if value is None or isinstance(value, bool):
        out.append(json.dumps(value))
    elif isinstance(value, Fraction):
        out.append(json.dumps(f"{value.numerator}/{value.denominator}"))
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(format_float(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{" + nl)
        for i, (key, item) in enumerate(value.items()):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be str, got {key!r}")
            if i:
                out.append(sep)
            out.append(pad + json.dumps(key) + (": " if indent else ":"))
            _render(item, out, indent, level + 1)
        out.append(nl + close_pad + "}")
    elif isinstance(value, (list, tuple)):
        if not len(value):
            out.append("[]")
            return
        out.append("[" + nl)
        for i, item in enumerate(value):
            if i:
                out.append(sep)
            out.append(pad)
            _render(item, out, indent, level + 1)
        out.append(nl + close_pad + "]")
    elif hasattr(value, "item"):  # numpy scalar
        _render(value.item(), out, indent, level)
    else:
        raise TypeError(f"cannot render {type(value).__name__} deterministically")


def render_json(value, *, indent: int = 2) -> str:
    """Render ``value`` as a JSON string with a trailing newline."""
    out: list[str] = []
    _render(value, out, indent, 0)
    return "".join(out) + "\n"


def write_json(path, value, *, indent: int = 2) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_json(value, indent=indent))


def load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
