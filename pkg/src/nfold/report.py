"""Law-by-law check reports shared by every checker."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

MAX_WITNESSES = 8


@dataclass
class Report:
    """Outcome of running an axiom suite.

    ``laws`` maps each law name to the list of witnesses found against it; an
    empty list means the law holds.  ``fragment`` marks reports produced on a
    bounded fragment of an infinite structure.
    """

    subject: str
    laws: dict[str, list] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)
    notes: dict[str, Any] = field(default_factory=dict)
    fragment: bool = False
    started: float = field(default_factory=time.perf_counter, repr=False)
    elapsed: float | None = None

    def law(self, name: str) -> None:
        self.laws.setdefault(name, [])
        self.counts.setdefault(name, 0)

    def fail(self, name: str, witness: Any) -> None:
        self.law(name)
        self.counts[name] += 1
        if len(self.laws[name]) < MAX_WITNESSES:
            self.laws[name].append(witness)

    def check(self, name: str, ok: bool, witness: Any = None) -> bool:
        self.law(name)
        if not ok:
            self.fail(name, witness)
        return ok

    def merge(self, other: Report, prefix: str = "") -> Report:
        for name, witnesses in other.laws.items():
            key = prefix + name
            self.law(key)
            self.laws[key].extend(witnesses[: MAX_WITNESSES - len(self.laws[key])])
            self.counts[key] += other.counts.get(name, len(witnesses))
        for k, v in other.notes.items():
            self.notes[prefix + k] = v
        self.fragment = self.fragment or other.fragment
        return self

    @property
    def failed(self) -> list[str]:
        return [name for name, w in self.laws.items() if self.counts.get(name, len(w))]

    @property
    def ok(self) -> bool:
        return not self.failed

    @property
    def verdict(self) -> str:
        if not self.ok:
            return "fail"
        return "partial-fragment" if self.fragment else "pass"

    def __bool__(self) -> bool:
        return self.ok

    def finish(self) -> Report:
        self.elapsed = time.perf_counter() - self.started
        return self

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "verdict": self.verdict,
            "laws": {
                name: {
                    "ok": not self.counts.get(name, 0),
                    "violations": self.counts.get(name, 0),
                    "witnesses": [jsonable(w) for w in ws],
                }
                for name, ws in self.laws.items()
            },
            "notes": {k: jsonable(v) for k, v in self.notes.items()},
            "elapsed": self.elapsed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"{self.subject}: {self.verdict.upper()}"]
        for name, ws in self.laws.items():
            n = self.counts.get(name, 0)
            if n:
                lines.append(f"  FAIL {name} ({n} violation{'s' if n != 1 else ''})")
                for w in ws:
                    lines.append(f"       witness: {w!r}")
            else:
                lines.append(f"  ok   {name}")
        for k, v in self.notes.items():
            lines.append(f"  note {k}: {v!r}")
        if self.elapsed is not None:
            lines.append(f"  time {self.elapsed:.3f}s")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.to_text()


def jsonable(value: Any) -> Any:
    """Best-effort conversion of witnesses (tuples, frozensets, ...) to JSON."""
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        return sorted((jsonable(v) for v in value), key=repr)
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return repr(value)
