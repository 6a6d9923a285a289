"""Result records shared by the verification checks and the backends."""

from __future__ import annotations

from dataclasses import dataclass, field

VERDICTS = ("pass", "fail", "skipped", "hypotheses-violated")


@dataclass
class CheckResult:
    """Outcome of one executable check against one manifold.

    ``worst_margin`` is min over samples of (bound - measured): nonnegative
    margins certify the inequality, a negative value is the violation
    magnitude.  ``verdict`` is "pass" iff no sample violated under the stated
    tolerance; "skipped" when the check does not apply; "hypotheses-violated"
    when the manifold failed its curvature certificate, in which case the
    margins are informational only.
    """

    check_name: str
    sample_count: int
    violation_count: int
    worst_margin: float
    tolerance: float
    verdict: str
    witnesses: list = field(default_factory=list)
    skipped_samples: int = 0
    equality: bool = False
    note: str = ""
    curve: dict | None = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "pass" and self.violation_count:
            raise ValueError("pass verdict with nonzero violation count")

    def to_dict(self) -> dict:
        out = {
            "name": self.check_name,
            "sample_count": self.sample_count,
            "violation_count": self.violation_count,
            "worst_margin": self.worst_margin,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "skipped_samples": self.skipped_samples,
            "equality": self.equality,
        }
        if self.note:
            out["note"] = self.note
        if self.curve is not None:
            out["curve"] = self.curve
        return out


@dataclass
class VerificationReport:
    """All check results for one manifold, plus provenance for reruns."""

    manifold: dict
    profile: dict
    checks: list
    provenance: dict
    report_version: int = 1

    def to_dict(self) -> dict:
        return {
            "report_version": self.report_version,
            "manifold": self.manifold,
            "profile": self.profile,
            "checks": [c.to_dict() for c in sorted(self.checks, key=lambda c: c.check_name)],
            "provenance": self.provenance,
        }

    @property
    def failed(self) -> bool:
        return any(c.verdict == "fail" for c in self.checks)

    @property
    def hypotheses_violated(self) -> bool:
        return any(c.verdict == "hypotheses-violated" for c in self.checks)

    def summary_lines(self) -> list:
        lines = [f"manifold: {self.manifold.get('label', '?')} "
                 f"(backend={self.manifold.get('backend', '?')}, "
                 f"n={self.profile.get('n', '?')}, H_max={self.profile.get('H_max', '?')})"]
        for c in sorted(self.checks, key=lambda c: c.check_name):
            flag = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP",
                    "hypotheses-violated": "HYPO"}[c.verdict]
            extra = " (equality)" if c.equality else ""
            lines.append(
                f"  [{flag}] {c.check_name}: samples={c.sample_count} "
                f"violations={c.violation_count} worst_margin={c.worst_margin:.3e} "
                f"tol={c.tolerance:.3e}{extra}")
            if c.note:
                lines.append(f"         note: {c.note}")
        return lines
