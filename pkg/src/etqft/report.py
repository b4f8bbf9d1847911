"""Pass/fail reports produced by the validators and axiom checkers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    samples: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, witness: str | None = None):
        self.samples += 1
        if not ok:
            self.failures.append(witness or "failed")

    def to_json(self) -> dict:
        return {"condition": self.name, "samples": self.samples,
                "failures": list(self.failures)}


@dataclass
class Report:
    title: str
    checks: dict = field(default_factory=dict)

    def check(self, name: str) -> Check:
        if name not in self.checks:
            self.checks[name] = Check(name)
        return self.checks[name]

    def record(self, name: str, ok: bool, witness: str | None = None):
        self.check(name).record(ok, witness)

    def expect_equal(self, name, lhs, rhs, describe=None):
        """Record ``lhs == rhs`` for matrices; the witness names the first bad column."""
        from etqft.exactlinalg import difference_witness

        w = difference_witness(lhs, rhs)
        if w is not None and describe:
            w = f"{describe}: {w}"
        self.record(name, w is None, w)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failed(self) -> list[str]:
        return [c.name for c in self.checks.values() if not c.passed]

    def merge(self, other: "Report") -> "Report":
        for name, c in other.checks.items():
            mine = self.check(name)
            mine.samples += c.samples
            mine.failures.extend(c.failures)
        return self

    def to_json(self) -> list[dict]:
        return [self.checks[k].to_json() for k in sorted(self.checks)]

    def table(self, color: bool = False) -> str:
        width = max([len(k) for k in self.checks] + [9])
        lines = [self.title, f"{'check':<{width}}  samples  result"]
        for k in sorted(self.checks):
            c = self.checks[k]
            status = "PASS" if c.passed else f"FAIL ({len(c.failures)})"
            if color:
                status = f"\033[32m{status}\033[0m" if c.passed else f"\033[31m{status}\033[0m"
            lines.append(f"{k:<{width}}  {c.samples:>7}  {status}")
            for w in c.failures[:3]:
                lines.append(f"{'':<{width}}    witness: {w}")
        return "\n".join(lines)

    def __str__(self):
        return self.table()
