"""CSV and JSON serialization with locale-free 17-significant-digit floats."""
from __future__ import annotations

import dataclasses
import enum
import io
import json
import math
from fractions import Fraction

import numpy as np

from . import __version__

TOOL = "weakmult"


def fmt_float(v: float) -> str:
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def plain(obj):
    """Convert reports into JSON-compatible builtins (floats stay floats)."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: plain(getattr(obj, f.name)) for f in dataclasses.fields(obj) if f.repr}
        for name in ("ok", "holds", "density", "midpoint", "width"):
            attr = getattr(type(obj), name, None)
            if isinstance(attr, property):
                out[name] = plain(getattr(obj, name))
        return out
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return float(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    return obj


class _Float17:
    __slots__ = ("text",)

    def __init__(self, v: float):
        self.text = fmt_float(v)


def _mark_floats(obj):
    if isinstance(obj, float):
        return _Float17(obj)
    if isinstance(obj, dict):
        return {k: _mark_floats(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_mark_floats(v) for v in obj]
    return obj


def dumps_json(obj) -> str:
    """JSON text with every float printed at 17 significant digits.

    Non-finite floats are written as the strings "inf", "-inf", "nan".
    """
    marked = _mark_floats(plain(obj))
    tokens: list[str] = []

    def default(o):
        if isinstance(o, _Float17):
            tokens.append(o.text)
            return f"\x00{len(tokens) - 1}\x00"
        raise TypeError(f"cannot serialize {type(o).__name__}")

    text = json.dumps(marked, default=default, indent=2, sort_keys=False, ensure_ascii=True)
    for i, tok in enumerate(tokens):
        literal = tok if tok not in ("nan", "inf", "-inf") else json.dumps(tok)
        text = text.replace(json.dumps(f"\x00{i}\x00"), literal, 1)
    return text + "\n"


def header(op: str, config: dict, seed: int) -> dict:
    return {"tool": TOOL, "version": __version__, "op": op, "config": plain(config), "seed": seed}


def envelope(op: str, params: dict, seed: int, result, checkpoints=(), flags=()) -> dict:
    return {
        "header": header(op, params, seed),
        "op": op,
        "params": plain(params),
        "result": plain(result),
        "checkpoints": plain(list(checkpoints)),
        "flags": list(flags),
    }


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating, Fraction)):
        return fmt_float(float(v))
    if v is None:
        return ""
    return str(v)


def dumps_csv(columns, rows, head: dict, flags=()) -> str:
    """CSV preceded by '# key: value' header lines."""
    buf = io.StringIO()
    buf.write(f"# tool: {head['tool']} {head['version']}\n")
    buf.write(f"# op: {head['op']}\n")
    buf.write(f"# config: {json.dumps(head['config'], sort_keys=True)}\n")
    buf.write(f"# seed: {head['seed']}\n")
    for fl in flags:
        buf.write(f"# flag: {fl}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_cell(v) for v in row) + "\n")
    return buf.getvalue()
