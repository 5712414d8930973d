"""Bit-stable JSON and CSV emission.

The stdlib json module formats floats with repr, whose output is the
shortest round-tripping string and therefore varies in width.  Reports
here must be byte-identical across runs and easy to diff, so floats are
always written with 17 significant digits and a lowercase exponent, which
also round-trips exactly.  The serializer below is deliberately tiny: it
handles the payload shapes the CLI produces and nothing else.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["format_float", "to_json", "to_csv", "ReportError"]


class ReportError(ValueError):
    """Payload contains something the stable serializer refuses to guess at."""


def format_float(x) -> str:
    """17-significant-digit decimal form of a finite float."""
    x = float(x)
    if not math.isfinite(x):
        raise ReportError(f"non-finite value {x!r} in report payload")
    return format(x, ".17g")


def _emit(value, out, indent):
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, item) in enumerate(value.items()):
            if not isinstance(key, str):
                raise ReportError(f"non-string key {key!r} in report payload")
            out.append(f'{pad}  "{key}": ')
            _emit(item, out, indent + 1)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        items = list(value)
        if not items:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(items):
            out.append(pad + "  ")
            _emit(item, out, indent + 1)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(pad + "]")
    elif isinstance(value, str):
        escaped = (
            value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        )
        out.append(f'"{escaped}"')
    elif isinstance(value, bool) or isinstance(value, np.bool_):
        out.append("true" if value else "false")
    elif value is None:
        out.append("null")
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        out.append(format_float(value))
    else:
        raise ReportError(f"cannot serialize {type(value).__name__} in report payload")


def to_json(payload) -> str:
    """Serialize a payload of dicts/lists/scalars; ends with a newline."""
    out = []
    _emit(payload, out, 0)
    out.append("\n")
    return "".join(out)


def _cell(value) -> str:
    if isinstance(value, str):
        if "," in value or "\n" in value or '"' in value:
            return '"' + value.replace('"', '""') + '"'
        return value
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    raise ReportError(f"cannot serialize {type(value).__name__} in a CSV cell")


def to_csv(header, rows) -> str:
    """CSV text with a header line and the same float format as to_json."""
    lines = [",".join(header)]
    width = len(header)
    for row in rows:
        row = list(row)
        if len(row) != width:
            raise ReportError(
                f"CSV row has {len(row)} cells, header has {width}"
            )
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"
