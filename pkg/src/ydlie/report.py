"""Check reports: one entry per (check, n, zeta, basis index)."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"


class InvariantViolation(RuntimeError):
    """An intermediate value left the subspace it provably lives in."""


@dataclass
class Entry:
    check: str
    n: int | None
    zeta: str | None
    index: int
    status: str
    witness: str | None = None

    def line(self) -> str:
        head = self.check
        if self.n is not None:
            head += f" n={self.n}"
        if self.zeta is not None:
            head += f" zeta={self.zeta}"
        head += f" #{self.index}"
        if self.status == FAIL:
            return f"{head} FAIL: witness = {self.witness}"
        if self.status == SKIPPED and self.witness:
            return f"{head} SKIPPED: {self.witness}"
        return f"{head} {self.status}"


@dataclass
class Report:
    entries: list[Entry] = field(default_factory=list)

    def add(self, check: str, n, zeta, index: int, ok: bool | None, witness: str | None = None):
        if ok is None:
            status = SKIPPED
        else:
            status = PASS if ok else FAIL
        self.entries.append(Entry(check, n, None if zeta is None else str(zeta), index, status,
                                  witness if status != PASS else None))

    def extend(self, other: "Report") -> "Report":
        self.entries.extend(other.entries)
        return self

    @property
    def ok(self) -> bool:
        return all(e.status != FAIL for e in self.entries)

    def count(self, status: str) -> int:
        return sum(1 for e in self.entries if e.status == status)

    @property
    def failures(self) -> list[Entry]:
        return [e for e in self.entries if e.status == FAIL]

    def summary(self) -> str:
        return f"{self.count(PASS)} passed, {self.count(FAIL)} failed, {self.count(SKIPPED)} skipped"

    def render_text(self) -> str:
        lines = [e.line() for e in self.entries]
        lines.append(self.summary())
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        rows = []
        for e in self.entries:
            d = asdict(e)
            if d["witness"] is None:
                del d["witness"]
            rows.append(d)
        return json.dumps({"entries": rows, "ok": self.ok}, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        return cls([Entry(**{"witness": None, **row}) for row in data["entries"]])

    def __bool__(self) -> bool:
        return self.ok
