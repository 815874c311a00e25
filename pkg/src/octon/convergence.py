"""Observed order of accuracy from a grid-refinement study."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

# Residuals at or below this are treated as exact zeros (round-off only).
EXACT_FLOOR = 1e-10


def observed_order(hs: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log(error) against log(h)."""
    hs, errors = np.asarray(hs, float), np.asarray(errors, float)
    if np.any(errors <= 0):
        return float("nan")
    return float(np.polyfit(np.log(hs), np.log(errors), 1)[0])


def pairwise_orders(errors: Sequence[float], ratio: float = 2.0) -> list[float]:
    e = np.asarray(errors, float)
    return [float(np.log(e[i] / e[i + 1]) / np.log(ratio)) for i in range(len(e) - 1)]


@dataclass
class ConvergenceResult:
    name: str
    levels: list[int]
    errors: list[float]
    order: float = field(init=False)
    exact: bool = field(init=False)

    def __post_init__(self):
        self.exact = bool(max(self.errors) <= EXACT_FLOOR)
        self.order = float("nan") if self.exact else observed_order(
            [1.0 / n for n in self.levels], self.errors)

    def within(self, target: float = 2.0, tol: float = 0.2) -> bool:
        return self.exact or abs(self.order - target) <= tol

    def at_least(self, minimum: float) -> bool:
        return self.exact or self.order >= minimum

    def non_convergent(self, floor: float) -> bool:
        """Errors fail to shrink and stay above ``floor``."""
        return (not self.exact) and self.order < 0.5 and min(self.errors) > floor

    def as_dict(self) -> dict:
        return {"levels": self.levels, "errors": self.errors,
                "order": None if self.exact else self.order, "exact": self.exact}


def study(name: str, levels: Sequence[int], error_at: Callable[[int], float]) -> ConvergenceResult:
    return ConvergenceResult(name, list(levels), [float(error_at(n)) for n in levels])


def study_many(levels: Sequence[int],
               errors_at: Callable[[int], dict[str, float]]) -> dict[str, ConvergenceResult]:
    """Run one callable per level that yields several named errors at once."""
    per_level = [errors_at(n) for n in levels]
    return {name: ConvergenceResult(name, list(levels), [float(d[name]) for d in per_level])
            for name in per_level[0]}
