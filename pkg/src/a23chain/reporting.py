"""Residual bookkeeping for identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Per-identity residual statistics over a sample sweep."""

    name: str
    residuals: list[float] = field(default_factory=list)
    tolerance: float = 1e-10
    details: dict = field(default_factory=dict)

    def record(self, residual: float):
        self.residuals.append(float(residual))

    @property
    def samples(self) -> int:
        return len(self.residuals)

    @property
    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0

    @property
    def mean_residual(self) -> float:
        return sum(self.residuals) / len(self.residuals) if self.residuals else 0.0

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tolerance

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "samples": self.samples,
            "max_residual": self.max_residual,
            "mean_residual": self.mean_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.details:
            d["details"] = self.details
        return d

    def __str__(self):
        flag = "PASS" if self.passed else "FAIL"
        return (f"[{flag}] {self.name}: max residual {self.max_residual:.3e} "
                f"(tol {self.tolerance:.1e}, {self.samples} samples)")
