"""Verification reports and their deterministic JSON serialization."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    label: str
    residual: float
    tol: float
    asserted: bool = True
    note: str = ""

    @property
    def passed(self) -> bool:
        return bool(math.isfinite(self.residual) and self.residual <= self.tol)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "paper_label": self.label,
            "residual": self.residual,
            "tol": self.tol,
            "pass": self.passed,
            "asserted": self.asserted,
            "note": self.note,
        }


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    runtime_ms: float | None = None
    values: dict = field(default_factory=dict)

    def add(self, name, label, residual, tol, asserted=True, note="") -> Check:
        check = Check(name, label, float(residual), float(tol), asserted, note)
        self.checks.append(check)
        return check

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.label, c.residual, c.tol, c.asserted, c.note))
        for k, v in other.values.items():
            self.values[prefix + k] = v

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.asserted)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict:
        out = {
            "config": self.config,
            "checks": [c.as_dict() for c in self.checks],
            "pass": self.passed,
            "runtime_ms": self.runtime_ms,
        }
        if self.values:
            out["values"] = self.values
        return out

    def to_json(self) -> str:
        return dumps(self.as_dict())

    def summary_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            verdict = ("PASS" if c.passed else "FAIL") if c.asserted else "info"
            lines.append(f"[{verdict:4}] {c.name:<48} residual={c.residual:.3e} tol={c.tol:.1e} {c.note}".rstrip())
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return lines


def _format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _emit(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if hasattr(obj, "tolist"):
        return _emit(obj.tolist(), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_emit(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_emit(v, indent, level) for v in obj) + "]"
        items = [pad + _emit(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """JSON text with insertion-ordered keys and 17 significant digits per float."""
    return _emit(obj, indent, 0) + "\n"
