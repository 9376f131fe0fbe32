"""Structured verification results and their JSON form."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

PASS, FAIL, SKIPPED, ERROR = "pass", "fail", "skipped", "error"
STATUSES = (PASS, FAIL, SKIPPED, ERROR)


@dataclass
class CheckResult:
    name: str
    status: str
    witnesses: list = field(default_factory=list)
    detail: str = ""
    data: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status in (PASS, SKIPPED)

    def to_dict(self, timings: bool = False) -> dict:
        d = asdict(self)
        if not timings:
            d.pop("elapsed")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CheckResult":
        return cls(d["name"], d["status"], list(d.get("witnesses", [])),
                   d.get("detail", ""), dict(d.get("data", {})), d.get("elapsed", 0.0))


@dataclass
class VerificationReport:
    input: dict
    ring: dict
    tau: int | None = None
    sigma: int | None = None
    bound: int | None = None
    h0: list = field(default_factory=list)  # [[degree, dim], ...] over the support
    checks: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        self.timings[check.name] = check.elapsed
        return check

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def has_errors(self) -> bool:
        return any(c.status == ERROR for c in self.checks)

    @property
    def has_failures(self) -> bool:
        return any(c.status == FAIL for c in self.checks)

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "input": self.input,
            "ring": self.ring,
            "tau": self.tau,
            "sigma": self.sigma,
            "bound": self.bound,
            "h0": self.h0,
            "checks": [c.to_dict(timings) for c in self.checks],
        }
        if timings:
            d["timings"] = self.timings
        return d

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        checks = [CheckResult.from_dict(c) for c in d.get("checks", [])]
        return cls(d["input"], d["ring"], d.get("tau"), d.get("sigma"), d.get("bound"),
                   [list(p) for p in d.get("h0", [])], checks, dict(d.get("timings", {})))

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def equivalent(self, other: "VerificationReport") -> bool:
        """Equal up to timing information."""
        return self.to_dict() == other.to_dict()

    def summary(self) -> str:
        lines = []
        src = self.input.get("f") or ", ".join(self.input.get("generators", []))
        lines.append(f"input: {src}")
        lines.append(f"ring: {self.ring.get('description', '')}")
        if self.tau is not None:
            lines.append(f"tau = {self.tau}, sigma = {self.sigma}, bound = {self.bound}")
        if self.h0 is not None:
            if self.h0:
                lines.append("h0: " + ", ".join(f"{k}:{v}" for k, v in self.h0))
            else:
                lines.append("h0: 0")
        for c in self.checks:
            extra = f"  ({c.detail})" if c.detail else ""
            lines.append(f"  [{c.status.upper():7s}] {c.name}{extra}")
            if c.status == FAIL:
                for w in c.witnesses[:3]:
                    lines.append(f"            witness: {w}")
        verdict = "PASS" if self.passed else ("ERROR" if self.has_errors else "FAIL")
        lines.append(f"overall: {verdict}")
        return "\n".join(lines)
