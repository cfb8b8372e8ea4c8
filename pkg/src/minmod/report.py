"""Machine-readable reports with deterministic, round-trippable JSON.

Floats are written with 17 significant digits, so parsing the text back
yields the identical double. Non-finite floats become the strings ``"inf"``,
``"-inf"`` and ``"nan"``; complex arrays become ``{"re": ..., "im": ...}``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

_NONFINITE = {"inf": math.inf, "-inf": -math.inf, "nan": math.nan}


def _float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def to_plain(obj):
    """Reduce numpy/Fraction/complex values to JSON-ready Python objects."""
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return {"re": to_plain(obj.real), "im": to_plain(obj.imag)}
        return to_plain(obj.tolist())
    if isinstance(obj, np.generic):
        return to_plain(obj.item())
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, Fraction):
        if obj.denominator == 1:
            return int(obj)
        f = float(obj)
        return f if Fraction(f) == obj else str(obj)
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    return obj


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    obj = to_plain(obj)
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(dumps(v, indent) for v in obj) + "]"
        inner = ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj)
        return "[\n" + inner + "\n" + end + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = ",\n".join(
            pad + json.dumps(k) + ": " + dumps(v, indent, _level + 1) for k, v in obj.items()
        )
        return "{\n" + inner + "\n" + end + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _restore(obj):
    if isinstance(obj, str) and obj in _NONFINITE:
        return _NONFINITE[obj]
    if isinstance(obj, list):
        return [_restore(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _restore(v) for k, v in obj.items()}
    return obj


@dataclass
class Report:
    command: str
    input_digest: str
    results: dict
    tolerances: dict
    seed: int
    violations: list = field(default_factory=list)

    def to_json(self) -> str:
        return dumps(
            {
                "command": self.command,
                "input_digest": self.input_digest,
                "seed": self.seed,
                "tolerances": self.tolerances,
                "violations": self.violations,
                "results": self.results,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = _restore(json.loads(text))
        return cls(d["command"], d["input_digest"], d["results"], d["tolerances"], d["seed"], d["violations"])
