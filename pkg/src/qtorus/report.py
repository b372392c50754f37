"""Check results and reports shared by the pipeline and the command line."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from . import __version__

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass
class CheckResult:
    name: str
    status: str
    witness: object = None
    elapsed: float = 0.0  # milliseconds
    detail: str = ""

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self, timings=False):
        out = {"name": self.name, "status": self.status, "witness": _text(self.witness)}
        if self.detail:
            out["detail"] = self.detail
        if timings:
            out["elapsed_ms"] = round(self.elapsed, 3)
        return out


def _text(w):
    if w is None or isinstance(w, (int, str)):
        return w
    return str(w)


def run_check(name, fn):
    """Run ``fn`` and wrap its verdict.

    ``fn`` returns a bool, or ``(bool, witness)``, or ``(bool, witness, detail)``.
    An exception becomes an ``error`` result with the message as witness.
    """
    start = time.perf_counter()
    try:
        out = fn()
    except Exception as exc:  # reported, not raised
        elapsed = (time.perf_counter() - start) * 1000
        return CheckResult(name, ERROR, f"{type(exc).__name__}: {exc}", elapsed)
    elapsed = (time.perf_counter() - start) * 1000
    if isinstance(out, tuple):
        ok, witness, *rest = out
        detail = rest[0] if rest else ""
    else:
        ok, witness, detail = out, None, ""
    if ok:
        return CheckResult(name, PASS, None, elapsed, detail)
    if witness is None:
        witness = "check returned false"
    return CheckResult(name, FAIL, witness, elapsed, detail)


@dataclass
class Report:
    command: list
    checks: list = field(default_factory=list)
    output: dict = field(default_factory=dict)

    def add(self, result):
        self.checks.append(result)
        return result

    def extend(self, results):
        for r in results:
            self.add(r)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def summary(self):
        counts = {PASS: 0, FAIL: 0, ERROR: 0}
        for c in self.checks:
            counts[c.status] += 1
        counts["total"] = len(self.checks)
        return counts

    def to_dict(self, timings=False):
        return {
            "tool": "qtorus",
            "version": __version__,
            "command": list(self.command),
            "checks": [c.to_dict(timings) for c in self.checks],
            "output": {k: _text(v) if not isinstance(v, (list, dict)) else v for k, v in self.output.items()},
            "summary": self.summary(),
        }

    def to_json(self, timings=False):
        return json.dumps(self.to_dict(timings), indent=2, ensure_ascii=False)

    def to_text(self, timings=False):
        lines = []
        for key, value in self.output.items():
            if isinstance(value, list):
                lines.append(f"{key}:")
                lines.extend(f"  {v}" for v in value)
            elif isinstance(value, dict):
                lines.append(f"{key}:")
                lines.extend(f"  {k}: {v}" for k, v in value.items())
            else:
                lines.append(f"{key}: {value}" if len(self.output) > 1 or self.checks else str(value))
        for c in self.checks:
            line = f"[{c.status.upper():5}] {c.name}"
            if timings:
                line += f" ({c.elapsed:.1f} ms)"
            lines.append(line)
            if c.witness is not None:
                lines.append(f"        witness: {_text(c.witness)}")
        if self.checks:
            s = self.summary()
            lines.append(f"{s[PASS]} passed, {s[FAIL]} failed, {s[ERROR]} errors")
        return "\n".join(lines)


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "qtorus report",
    "type": "object",
    "required": ["tool", "version", "command", "checks", "output", "summary"],
    "additionalProperties": False,
    "properties": {
        "tool": {"const": "qtorus"},
        "version": {"type": "string"},
        "command": {"type": "array", "items": {"type": "string"}},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status", "witness"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "status": {"enum": [PASS, FAIL, ERROR]},
                    "witness": {"type": ["string", "integer", "null"]},
                    "detail": {"type": "string"},
                    "elapsed_ms": {"type": "number"},
                },
                "allOf": [{
                    "if": {"properties": {"status": {"enum": [FAIL, ERROR]}}},
                    "then": {"properties": {"witness": {"type": ["string", "integer"]}}},
                }],
            },
        },
        "output": {"type": "object"},
        "summary": {
            "type": "object",
            "required": [PASS, FAIL, ERROR, "total"],
            "properties": {k: {"type": "integer", "minimum": 0} for k in (PASS, FAIL, ERROR, "total")},
        },
    },
}
