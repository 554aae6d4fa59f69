"""Deterministic command reports in two renderings (text and JSON)."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from . import __version__


def render_value(value) -> object:
    """Integers exact, reals at 17 significant digits, everything else as text."""
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    if isinstance(value, tuple):
        return "(" + ",".join(str(render_value(v)) for v in value) + ")"
    return str(value)


@dataclass
class Report:
    command: str
    inputs: List[Tuple[str, object]] = field(default_factory=list)
    results: List[Tuple[str, object]] = field(default_factory=list)
    checks: List[Tuple[str, bool, str]] = field(default_factory=list)
    notices: List[str] = field(default_factory=list)
    version: str = __version__
    timings: List[Tuple[str, float]] = field(default_factory=list, repr=False)  # never rendered

    def add(self, key: str, value) -> None:
        self.results.append((key, value))

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append((name, bool(passed), detail))
        return bool(passed)

    def notice(self, text: str) -> None:
        self.notices.append(text)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def text(self) -> str:
        lines = [f"# kleinlens {self.version}", f"command: {self.command}"]
        lines += [f"input.{k}: {render_value(v)}" for k, v in self.inputs]
        lines += [f"{k}: {_text(render_value(v))}" for k, v in self.results]
        for name, ok, detail in self.checks:
            tail = f" ({detail})" if detail else ""
            lines.append(f"check.{name}: {'pass' if ok else 'FAIL'}{tail}")
        lines += [f"notice: {t}" for t in self.notices]
        lines.append(f"status: {'ok' if self.passed else 'failed'}")
        return "\n".join(lines) + "\n"

    def json(self) -> str:
        doc = {
            "version": self.version,
            "command": self.command,
            "inputs": {k: render_value(v) for k, v in self.inputs},
            "results": [[k, render_value(v)] for k, v in self.results],
            "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in self.checks],
            "notices": list(self.notices),
            "status": "ok" if self.passed else "failed",
        }
        return json.dumps(doc, indent=2) + "\n"

    def render(self, fmt: str = "text") -> str:
        return self.json() if fmt == "json" else self.text()


def _text(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)
