"""Check reports: named verdicts with deterministic witnesses."""

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Verdict:
    name: str
    ok: bool
    witness: dict[str, str] = field(default_factory=dict)
    # a failed finding contradicts a proved statement rather than a hypothesis
    finding: bool = False
    note: str = ""


@dataclass
class Report:
    title: str
    verdicts: list[Verdict] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def add(self, name, ok, witness=None, finding=False, note="") -> Verdict:
        v = Verdict(name, bool(ok), dict(witness or {}), finding, note)
        self.verdicts.append(v)
        return v

    @property
    def passed(self) -> bool:
        return all(v.ok for v in self.verdicts)

    @property
    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.ok]

    @property
    def findings(self) -> list[Verdict]:
        return [v for v in self.verdicts if v.finding and not v.ok]

    def __getitem__(self, name: str) -> Verdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(v.name == name for v in self.verdicts)

    def witness_lines(self) -> list[str]:
        """One ``WITNESS k=v ...`` line per failed verdict."""
        lines = []
        for v in self.failures:
            parts = [f"check={v.name.replace(' ', '_')}"]
            parts += [f"{k}={val}" for k, val in v.witness.items()]
            lines.append("WITNESS " + " ".join(parts))
        return lines

    def render(self) -> str:
        out = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for v in self.verdicts:
            tag = "ok" if v.ok else ("FINDING" if v.finding else "fail")
            line = f"  [{tag}] {v.name}"
            if v.note:
                line += f" ({v.note})"
            out.append(line)
        out += [f"  note: {n}" for n in self.notes]
        return "\n".join(out)
