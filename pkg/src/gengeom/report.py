"""Small result containers shared by the structure checks and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Finding:
    """Outcome of one exact test; ``witness`` names a nonzero value when ``ok`` is False."""

    ok: bool
    witness: str | None = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class Report:
    title: str
    findings: dict[str, Finding] = field(default_factory=dict)

    def add(self, name: str, finding: Finding) -> Finding:
        self.findings[name] = finding
        return finding

    def __getitem__(self, name: str) -> Finding:
        return self.findings[name]

    def __contains__(self, name: str) -> bool:
        return name in self.findings

    def ok(self, *names: str) -> bool:
        return all(self.findings[n].ok for n in (names or self.findings))

    def first_witness(self, *names: str) -> str | None:
        for n in names or self.findings:
            f = self.findings[n]
            if not f.ok:
                return f"{n}: {f.witness}" if f.witness else n
        return None

    def lines(self) -> list[str]:
        out = []
        for n, f in self.findings.items():
            s = f"{n}: {'ok' if f.ok else 'violated'}"
            if f.witness:
                s += f" [{f.witness}]"
            if f.note:
                s += f" ({f.note})"
            out.append(s)
        return out


def scan(items, label) -> Finding:
    """First nonzero ``value`` among ``(key, value)`` pairs, as a Finding.

    ``value`` needs ``is_zero()``; ``label(key, value)`` renders the witness.
    """
    for key, value in items:
        if not value.is_zero():
            return Finding(False, label(key, value))
    return Finding(True)
