"""Numerical parameters that give "limit" and "for all" a finite meaning."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

__all__ = ["LimitSchedule", "CheckParams"]


@dataclass(frozen=True)
class LimitSchedule:
    """Geometric step magnitudes ``h_k = h0 * rho**k`` for ``k < steps``."""

    h0: float = 1.0
    rho: float = 0.5
    steps: int = 30

    def __post_init__(self):
        if not (math.isfinite(self.h0) and self.h0 > 0):
            raise ParameterError(f"h0 must be a positive finite real, got {self.h0!r}")
        if not 0 < self.rho < 1:
            raise ParameterError(f"rho must lie in (0,1), got {self.rho!r}")
        if int(self.steps) != self.steps or self.steps < 1:
            raise ParameterError(f"steps must be a positive integer, got {self.steps!r}")
        if not self.h0 * self.rho ** (self.steps - 1) > 0:
            raise ParameterError("schedule underflows: final step is zero in floating point")

    def magnitudes(self) -> np.ndarray:
        return self.h0 * self.rho ** np.arange(self.steps, dtype=float)


@dataclass(frozen=True)
class CheckParams:
    """Everything a verifier needs besides its mathematical inputs.

    ``t_grid`` is the set of ``t`` values at which limits are certified;
    ``axiom_t_grid`` is the (wider) grid used when sampling the norm axioms.
    ``alpha`` is the acceptance level: a membership limit counts as reached
    when ``mu >= 1 - alpha`` and ``nu <= alpha`` at the final step.
    """

    schedule: LimitSchedule = field(default_factory=LimitSchedule)
    t_grid: tuple = (0.1, 1.0, 10.0)
    alpha: float = 1e-3
    tail_window: int = 5
    sample_count: int = 10_000
    seed: int = 0
    algebra_tol: float = 1e-12
    custom_algebra_tol: float = 1e-9
    limit_tol: float = 1e-4
    strict_tol: float = 1e-6
    continuity_step: float = 1e-6
    continuity_bound: float = 2.5e-6
    T_max: float = 1e6
    axiom_t_grid: tuple = (0.01, 0.1, 1.0, 10.0, 100.0)
    tail_slack: float = 1e-4
    direction_count: int = 4

    def __post_init__(self):
        object.__setattr__(self, "t_grid", tuple(float(t) for t in self.t_grid))
        object.__setattr__(self, "axiom_t_grid", tuple(float(t) for t in self.axiom_t_grid))
        if not 0 < self.alpha < 1:
            raise ParameterError("alpha must lie in (0,1)")
        if not self.t_grid:
            raise ParameterError("t_grid must be non-empty")
        if not self.axiom_t_grid:
            raise ParameterError("axiom_t_grid must be non-empty")
        for t in self.t_grid + self.axiom_t_grid:
            if not (math.isfinite(t) and t > 0):
                raise ParameterError(f"grid values must be positive finite reals, got {t!r}")
        if not 1 <= self.tail_window <= self.schedule.steps:
            raise ParameterError("tail_window must satisfy 1 <= W <= schedule.steps")
        if self.sample_count < 1:
            raise ParameterError("sample_count must be >= 1")
        if int(self.seed) != self.seed or self.seed < 0:
            raise ParameterError("seed must be a non-negative integer")
        if self.direction_count < 0:
            raise ParameterError("direction_count must be >= 0")
        for name in ("algebra_tol", "custom_algebra_tol", "limit_tol", "strict_tol",
                     "continuity_step", "continuity_bound", "tail_slack"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ParameterError(f"{name} must be a non-negative finite real")
        if not self.T_max > max(self.axiom_t_grid):
            raise ParameterError("T_max must exceed every axiom grid value")

    def replace(self, **changes) -> "CheckParams":
        if "schedule" not in changes and {"h0", "rho", "steps"} & changes.keys():
            fields = {k: changes.pop(k) for k in ("h0", "rho", "steps") if k in changes}
            changes["schedule"] = dataclasses.replace(self.schedule, **fields)
        return dataclasses.replace(self, **changes)

    def rng(self, stream: int = 0) -> np.random.Generator:
        """Seeded generator; distinct ``stream`` values give independent draws."""
        return np.random.default_rng([self.seed, stream])

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["t_grid"] = list(self.t_grid)
        d["axiom_t_grid"] = list(self.axiom_t_grid)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CheckParams":
        d = dict(d)
        if "schedule" in d and isinstance(d["schedule"], dict):
            d["schedule"] = LimitSchedule(**d["schedule"])
        return cls(**d)
