from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

PASS, FAIL, UNRESOLVED = "PASS", "FAIL", "UNRESOLVED"


@dataclass
class Check:
    name: str
    status: str
    details: str = ""

    @classmethod
    def of(cls, name: str, ok: bool, details: str = "") -> Check:
        return cls(name, PASS if ok else FAIL, details)


@dataclass
class ReportDocument:
    command: str
    parameters: dict
    checks: list[Check] = field(default_factory=list)
    lines: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 0 if all(c.status == PASS for c in self.checks) else 1

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "parameters": self.parameters,
            "checks": [asdict(c) for c in self.checks],
            "exit_code": self.exit_code,
        }
        if self.data:
            doc["data"] = self.data
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"

    def to_text(self) -> str:
        out = list(self.lines)
        for c in self.checks:
            out.append(f"{c.status:<10} {c.name}" + (f": {c.details}" if c.details else ""))
        if self.checks:
            passed = sum(c.status == PASS for c in self.checks)
            out.append(f"{passed}/{len(self.checks)} checks passed")
        return "\n".join(out) + "\n"
