from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class Config:
    """Numeric knobs shared by the library entry points and the CLI."""

    tol: float = 1e-10
    compare_tol: float = 1e-6
    min_exponent: Fraction = Fraction(-2)
    radii: tuple[float, ...] = (50.0, 100.0, 200.0)
    grid_count: int = 64
    window: tuple[float, ...] = (20.0,)
    output_format: str = "text"
    angle: float = 0.0
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not self.compare_tol >= self.tol:
            raise ValueError("compare_tol must be at least tol")
        if Fraction(self.min_exponent) > 0:
            raise ValueError("min_exponent must be <= 0")
        if self.grid_count < 8:
            raise ValueError("grid_count must be at least 8")
        if any(r <= 0 for r in self.radii):
            raise ValueError("radii must be positive")
        if any(w <= 0 for w in self.window):
            raise ValueError("window must be positive")
        if self.output_format not in ("text", "json", "csv"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        object.__setattr__(self, "min_exponent", Fraction(self.min_exponent))
