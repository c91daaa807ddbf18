"""Run reports and their json / csv / table renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .poly import format_rational


@dataclass
class Case:
    params: dict[str, Any]
    computed: Any
    expected: Any
    relation: str = "=="
    claim: str = ""
    error: str = ""

    @property
    def passed(self) -> bool:
        if self.error:
            return False
        if self.relation == "==":
            return self.computed == self.expected
        if self.relation == ">=":
            return self.computed is not None and self.computed >= self.expected
        if self.relation == ">":
            return self.computed is not None and self.computed > self.expected
        raise ValueError(f"unknown relation {self.relation!r}")

    def to_dict(self) -> dict:
        out = {
            "params": self.params,
            "computed": _plain(self.computed),
            "expected": _plain(self.expected),
            "relation": self.relation,
            "pass": self.passed,
            "claim": self.claim,
        }
        if self.error:
            out["error"] = self.error
        return out


@dataclass
class RunReport:
    preset: str
    criterion: str
    cases: list[Case] = field(default_factory=list)
    solver: dict[str, int] = field(default_factory=lambda: {"lps_solved": 0, "pivots": 0})
    wall_time: float | None = None

    @property
    def passed(self) -> bool:
        return bool(self.cases) and all(c.passed for c in self.cases)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "preset": self.preset,
            "criterion": self.criterion,
            "cases": [c.to_dict() for c in self.cases],
            "pass": self.passed,
            "solver": dict(self.solver),
        }
        if timing and self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def _plain(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def _params_text(params: dict) -> str:
    return " ".join(f"{k}={_plain(v)}" for k, v in params.items())


def emit(reports: list[RunReport], fmt: str = "table", timing: bool = False) -> str:
    """Render reports; output is identical for identical inputs unless ``timing`` is set."""
    if fmt == "json":
        body = [r.to_dict(timing) for r in reports]
        return json.dumps(body[0] if len(body) == 1 else body, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["preset", "params", "computed", "relation", "expected", "pass", "claim"])
        for r in reports:
            for c in r.cases:
                computed = c.error if c.error else _plain(c.computed)
                writer.writerow([r.preset, _params_text(c.params), computed, c.relation,
                                 _plain(c.expected), "pass" if c.passed else "FAIL", c.claim])
        return buf.getvalue()
    if fmt == "table":
        return "".join(_table(r, timing) for r in reports)
    raise ValueError(f"unknown format {fmt!r}")


def _table(r: RunReport, timing: bool) -> str:
    rows = [["params", "computed", "", "expected", "result"]]
    for c in r.cases:
        computed = f"error: {c.error}" if c.error else str(_plain(c.computed))
        rows.append([_params_text(c.params), computed, c.relation, str(_plain(c.expected)),
                     "pass" if c.passed else "FAIL"])
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = [f"== {r.preset} ({r.criterion}) =="]
    for k, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    tail = f"{'PASS' if r.passed else 'FAIL'}  lps={r.solver['lps_solved']} pivots={r.solver['pivots']}"
    if timing and r.wall_time is not None:
        tail += f"  wall={r.wall_time:.2f}s"
    lines.append(tail)
    for c in r.cases:
        if not c.passed and c.claim:
            lines.append(f"  failed case {_params_text(c.params)}: {c.claim}")
    return "\n".join(lines) + "\n\n"
