"""Problem parameters for the nonlocal semilinear equation."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class FracParams:
    """Dimension N, fractional order s, and growth exponent p.

    The experiment regime additionally requires N > 2s so that the critical
    exponent 2*_s = 2N/(N - 2s) is finite, and subcriticality
    1 < p < (N + 2s)/(N - 2s) = 2*_s - 1.
    """

    N: int = 1
    s: float = 0.4
    p: float = 2.0

    def __post_init__(self):
        if not 0.0 < self.s < 1.0:
            raise ValueError(f"need s in (0, 1), got s={self.s}")
        if self.N < 1:
            raise ValueError(f"need N >= 1, got N={self.N}")
        if self.p <= 1.0:
            raise ValueError(f"need p > 1, got p={self.p}")

    @property
    def two_star(self) -> float:
        """Critical Sobolev exponent 2N/(N - 2s); requires N > 2s."""
        if not self.N > 2 * self.s:
            raise ValueError(f"2*_s undefined: need N > 2s, got N={self.N}, s={self.s}")
        return 2.0 * self.N / (self.N - 2.0 * self.s)

    def validate_experiment_regime(self) -> None:
        """Enforce N > 2s and subcritical p; used by experiment entry points."""
        if not self.N > 2 * self.s:
            raise ValueError(
                f"experiment regime requires N > 2s (got N={self.N}, s={self.s})"
            )
        if not self.p < self.two_star - 1.0:
            raise ValueError(
                f"supercritical exponent: need p < {self.two_star - 1.0}, got p={self.p}"
            )
