"""Plain check reports shared by the verification suites."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import List, Optional


@dataclass
class CheckRow:
    label: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        s = f"{self.label} {'pass' if self.ok else 'fail'}"
        return f"{s} {self.detail}" if self.detail else s


@dataclass
class CheckReport:
    name: str
    rows: List[CheckRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def add(self, label: str, ok: bool, detail: str = "") -> None:
        self.rows.append(CheckRow(label, bool(ok), "" if ok else detail))

    def first_failure(self) -> Optional[CheckRow]:
        return next((r for r in self.rows if not r.ok), None)

    def lines(self) -> List[str]:
        return [r.line() for r in self.rows] + [f"{self.name}: {'pass' if self.ok else 'fail'}"]

    def to_json(self) -> str:
        return json.dumps({"name": self.name, "ok": self.ok, "rows": [asdict(r) for r in self.rows]}, indent=2)
