"""Analysis reports emitted by the command-line front end."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

SIG_DIGITS = 12


def _canon(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return None
        return float(f"{x:.{SIG_DIGITS}g}")
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _canon(obj.real), "im": _canon(obj.imag)}
    if isinstance(obj, np.ndarray):
        return _canon(obj.tolist())
    return obj


def canonical_json(obj: Any) -> str:
    """Sorted keys, floats rounded to 12 significant digits, non-finite as null.

    Parsing the output and feeding it back reproduces it byte for byte.
    """
    return json.dumps(_canon(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


@dataclass
class AnalysisReport:
    input_descriptor: str
    command: str
    p: str
    results: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "input": self.input_descriptor,
            "p": self.p,
            "results": self.results,
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    def to_table(self) -> str:
        lines = [f"{self.command}: {self.input_descriptor}  (p = {self.p})"]
        _render(self.results, lines, indent=0)
        for w in self.warnings:
            lines.append(f"warning: {w}")
        return "\n".join(lines) + "\n"


def _fmt(v: Any) -> str:
    if isinstance(v, bool) or v is None:
        return str(v).lower() if isinstance(v, bool) else "-"
    if isinstance(v, float):
        if not math.isfinite(v):
            return str(v)
        if v == int(v) and abs(v) < 1e12:
            return str(int(v))
        return f"{v:.4f}"
    return str(v)


def _is_record_list(v: Any) -> bool:
    return isinstance(v, list) and bool(v) and all(isinstance(r, dict) for r in v) and all(
        not isinstance(x, (dict, list)) for r in v for x in r.values()
    )


def _render(obj: dict, lines: list[str], indent: int) -> None:
    pad = "  " * indent
    for key, val in obj.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            _render(val, lines, indent + 1)
        elif _is_record_list(val):
            cols = list(val[0].keys())
            lines.append(f"{pad}{key}:")
            rows = [[_fmt(r.get(c)) for c in cols] for r in val]
            widths = [max(len(c), *(len(row[i]) for row in rows)) for i, c in enumerate(cols)]
            lines.append(pad + "  " + "  ".join(c.rjust(w) for c, w in zip(cols, widths)))
            for row in rows:
                lines.append(pad + "  " + "  ".join(x.rjust(w) for x, w in zip(row, widths)))
        elif isinstance(val, list):
            lines.append(f"{pad}{key}: " + ", ".join(_fmt(x) for x in val))
        else:
            lines.append(f"{pad}{key}: {_fmt(val)}")
