"""Finite limit certificates, plus convergence and continuity checks.

A membership limit ``mu(r(h), t) -> 1``, ``nu(r(h), t) -> 0`` as ``h -> 0`` is
certified on a geometric step schedule: for every ``t`` in the grid the value
at the last step must be within ``alpha`` of its limit, and over the last
``tail_window`` steps ``mu`` must not decrease and ``nu`` must not increase
(up to ``tail_slack``).  Every verifier in the package goes through
:func:`build_profile`, so they all share this one meaning of "limit".
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import NumericError
from .params import CheckParams, LimitSchedule
from .space import IFNSpace, as_vector

__all__ = [
    "LimitSchedule",
    "CheckParams",
    "LimitProfile",
    "CheckReport",
    "GRID_NOTE",
    "build_profile",
    "limit_check",
    "check_convergence",
    "check_continuity",
    "closed_form_pass",
    "index_horizon",
]

GRID_NOTE = "grid-certified: limits and quantifiers over t are checked on the finite t_grid only"

# Consecutive indices checked after the final horizon index.
CONVERGENCE_BLOCK = 16
# Above this many profiles a report serializes failures and the worst passes only.
_MAX_SERIALIZED_PROFILES = 32


@dataclass
class LimitProfile:
    """Membership values of a residual along the step schedule.

    ``mu`` and ``nu`` have shape ``(steps, len(t_grid))``.
    """

    label: str
    t_grid: tuple
    steps: np.ndarray
    mu: np.ndarray
    nu: np.ndarray
    passed: bool
    worst_t: float
    final_deficit: float
    failures: list = field(default_factory=list)

    def final(self, t: float):
        j = self.t_grid.index(float(t))
        return float(self.mu[-1, j]), float(self.nu[-1, j])

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "t_grid": list(self.t_grid),
            "steps": self.steps.tolist(),
            "mu": self.mu.tolist(),
            "nu": self.nu.tolist(),
            "passed": self.passed,
            "worst_t": self.worst_t,
            "final_deficit": self.final_deficit,
            "failures": list(self.failures),
        }


def build_profile(label: str, steps, mu, nu, params: CheckParams) -> LimitProfile:
    """Apply the limit criterion to precomputed ``(steps, t)`` membership arrays."""
    steps = np.asarray(steps, dtype=float)
    mu = np.asarray(mu, dtype=float).reshape(steps.size, len(params.t_grid))
    nu = np.asarray(nu, dtype=float).reshape(steps.size, len(params.t_grid))
    alpha = params.alpha
    W = min(params.tail_window, steps.size)
    slack = max(params.algebra_tol, params.tail_slack)
    failures = []
    deficits = np.maximum(1.0 - mu[-1], nu[-1])
    for j, t in enumerate(params.t_grid):
        if not mu[-1, j] >= 1.0 - alpha:
            failures.append(f"t={t!r}: final mu={float(mu[-1, j])!r} < 1-alpha")
        if not nu[-1, j] <= alpha:
            failures.append(f"t={t!r}: final nu={float(nu[-1, j])!r} > alpha")
        if W > 1:
            if np.any(np.diff(mu[-W:, j]) < -slack):
                failures.append(f"t={t!r}: mu decreases within the last {W} steps")
            if np.any(np.diff(nu[-W:, j]) > slack):
                failures.append(f"t={t!r}: nu increases within the last {W} steps")
    worst = int(np.argmax(deficits))
    return LimitProfile(label, params.t_grid, steps, mu, nu, not failures,
                        float(params.t_grid[worst]), float(deficits[worst]), failures)


def _step_values(params: CheckParams, sign: float = 1.0, steps=None) -> np.ndarray:
    if steps is None:
        steps = params.schedule.magnitudes()
    return sign * np.asarray(steps, dtype=float)


def _residuals(residual: Callable, hs: np.ndarray, dim: int) -> np.ndarray:
    rows = []
    for h in hs:
        r = np.atleast_1d(np.asarray(residual(float(h)), dtype=float))
        if r.shape != (dim,):
            raise NumericError(f"residual at h={h!r} has shape {r.shape}, expected ({dim},)", step=float(h))
        if not np.all(np.isfinite(r)):
            raise NumericError(f"residual is non-finite at h={h!r}", step=float(h))
        rows.append(r)
    return np.array(rows)


def memberships(space: IFNSpace, R: np.ndarray, t_grid: Sequence[float]):
    """``(mu, nu)`` arrays of shape ``(len(R), len(t_grid))``."""
    mu = np.empty((R.shape[0], len(t_grid)))
    nu = np.empty_like(mu)
    for j, t in enumerate(t_grid):
        mu[:, j], nu[:, j] = space.pairs(R, t)
    return mu, nu


def limit_check(residual: Callable, space_target: IFNSpace, params: Optional[CheckParams] = None,
                sign: float = 1.0, steps=None, label: str = "") -> LimitProfile:
    """Certify ``mu(residual(h), t) -> 1`` and ``nu(residual(h), t) -> 0``.

    ``residual`` maps a signed step to a vector of the target space; ``sign``
    selects the side from which ``h`` approaches 0.
    """
    params = params or CheckParams()
    hs = _step_values(params, sign, steps)
    R = _residuals(residual, hs, space_target.dim)
    mu, nu = memberships(space_target, R, params.t_grid)
    return build_profile(label or ("+" if sign > 0 else "-"), hs, mu, nu, params)


def closed_form_pass(final_residual_norm: float, params: CheckParams) -> bool:
    """Final-step criterion for the standard norm, in terms of the classical norm.

    ``mu >= 1 - alpha`` at every grid ``t`` iff ``|r| <= alpha * min(t) / (1 - alpha)``.
    """
    return final_residual_norm <= params.alpha * min(params.t_grid) / (1.0 - params.alpha)


@dataclass
class CheckReport:
    check_id: str
    inputs: dict
    passed: bool
    profiles: list
    witnesses: list
    notes: list
    seed: int
    params: CheckParams
    elapsed: float = 0.0

    @property
    def worst(self) -> Optional[LimitProfile]:
        if not self.profiles:
            return None
        failing = [p for p in self.profiles if not p.passed]
        pool = failing or self.profiles
        return max(pool, key=lambda p: p.final_deficit)

    def to_dict(self) -> dict:
        profiles = self.profiles
        notes = list(self.notes)
        if len(profiles) > _MAX_SERIALIZED_PROFILES:
            failing = [p for p in profiles if not p.passed]
            passing = sorted((p for p in profiles if p.passed), key=lambda p: -p.final_deficit)
            keep = (failing + passing)[:_MAX_SERIALIZED_PROFILES]
            keep_ids = {id(p) for p in keep}
            profiles = [p for p in profiles if id(p) in keep_ids]
            notes.append(f"{len(profiles)} of {len(self.profiles)} profiles serialized "
                         "(all failures first, then the worst passes)")
        return {
            "check_id": self.check_id,
            "inputs": self.inputs,
            "verdict": "pass" if self.passed else "fail",
            "worst": None if self.worst is None else profile_witness(self.worst),
            "profiles": [p.to_dict() for p in profiles],
            "witnesses": list(self.witnesses),
            "notes": notes,
            "seed": self.seed,
            "params": self.params.to_dict(),
        }


def profile_witness(p: LimitProfile) -> dict:
    j = p.t_grid.index(p.worst_t)
    return {"profile": p.label, "t": p.worst_t, "step": float(p.steps[-1]),
            "mu": float(p.mu[-1, j]), "nu": float(p.nu[-1, j]), "reasons": list(p.failures)}


def index_horizon(params: CheckParams) -> np.ndarray:
    """Sequence indices ``n_k = ceil(1 / h_k)`` that grow as the schedule shrinks."""
    hs = params.schedule.magnitudes()
    return np.maximum(1, np.ceil(np.round(1.0 / hs, 9))).astype(np.int64)


def block_profile(label: str, steps, mu, nu, params: CheckParams) -> LimitProfile:
    """Every row (not just the last) must be within ``alpha`` of the limit."""
    steps = np.asarray(steps, dtype=float)
    alpha = params.alpha
    failures = []
    for j, t in enumerate(params.t_grid):
        bad = np.flatnonzero(~((mu[:, j] >= 1.0 - alpha) & (nu[:, j] <= alpha)))
        if bad.size:
            i = int(bad[0])
            failures.append(f"t={t!r}: n={int(steps[i])} has mu={float(mu[i, j])!r}, "
                            f"nu={float(nu[i, j])!r}")
    deficits = np.maximum(1.0 - mu, nu)
    i, j = np.unravel_index(int(np.argmax(deficits)), deficits.shape)
    return LimitProfile(label, params.t_grid, steps, mu, nu, not failures,
                        float(params.t_grid[j]), float(deficits[i, j]), failures)


def check_convergence(space: IFNSpace, sequence: Callable[[int], object], limit_candidate,
                      params: Optional[CheckParams] = None) -> CheckReport:
    """Certify ``x_n -> limit_candidate`` along the index horizon.

    Besides the horizon ``n_k``, the ``BLOCK`` consecutive indices from the
    final ``n_K`` on must all lie within ``alpha`` (a finite "for all n >= N").
    """
    params = params or CheckParams()
    start = time.perf_counter()
    limit = as_vector(limit_candidate, space.dim)
    idx = index_horizon(params)

    def residual(n):
        return np.atleast_1d(np.asarray(sequence(int(n)), dtype=float)) - limit

    R = _residuals(residual, idx.astype(float), space.dim)
    mu, nu = memberships(space, R, params.t_grid)
    prof = build_profile("n", idx, mu, nu, params)
    block = idx[-1] + np.arange(CONVERGENCE_BLOCK)
    Rb = _residuals(residual, block.astype(float), space.dim)
    blk = block_profile("n-block", block, *memberships(space, Rb, params.t_grid), params)
    profiles = [prof, blk]
    return CheckReport(
        "convergence",
        {"limit": limit.tolist(), "space": space.label},
        prof.passed and blk.passed, profiles,
        [profile_witness(p) for p in profiles if not p.passed],
        [GRID_NOTE, f"index horizon n_k = ceil(1/h_k), final n = {int(idx[-1])}; "
                    f"indices {int(block[0])}..{int(block[-1])} checked as a block"],
        params.seed, params, time.perf_counter() - start,
    )


def _vector_map(f: Callable, dim_out: int):
    def g(x):
        y = np.atleast_1d(np.asarray(f(x), dtype=float))
        if y.shape != (dim_out,):
            raise NumericError(f"map returned shape {y.shape}, expected ({dim_out},)")
        return y
    return g


def continuity_directions(space: IFNSpace, params: CheckParams, count: Optional[int] = None,
                          stream: int = 5) -> np.ndarray:
    """``+-`` axis directions followed by seeded random unit vectors."""
    n = space.dim
    eye = np.eye(n)
    k = params.sample_count // 10 if count is None else count
    rnd = params.rng(stream).standard_normal(size=(k, n))
    rnd = rnd[np.linalg.norm(rnd, axis=1) > 1e-12]
    dirs = np.vstack([eye, -eye, rnd]) if k else np.vstack([eye, -eye])
    return space.unit(dirs)


def check_continuity(f: Callable, x0, spaces, params: Optional[CheckParams] = None,
                     directions=None) -> CheckReport:
    """Certify ``f(x0 + h d) - f(x0) -> 0`` along many directions ``d``.

    ``spaces`` is the pair ``(U, V)`` of domain and codomain spaces.
    """
    params = params or CheckParams()
    start = time.perf_counter()
    U, V = spaces
    x0 = as_vector(x0, U.dim)
    g = _vector_map(f, V.dim)
    fx0 = g(x0)
    if not np.all(np.isfinite(fx0)):
        raise NumericError(f"f(x0) is non-finite at x0={x0.tolist()}")
    D = continuity_directions(U, params)
    if directions is not None:
        D = np.vstack([D, np.atleast_2d(np.asarray(directions, dtype=float))])
    profiles = []
    for i, d in enumerate(D):
        profiles.append(limit_check(lambda h, d=d: g(x0 + h * d) - fx0, V, params,
                                    label=f"d{i}"))
    passed = all(p.passed for p in profiles)
    witnesses = [dict(profile_witness(p), direction=D[i].tolist())
                 for i, p in enumerate(profiles) if not p.passed][:8]
    return CheckReport(
        "continuity",
        {"x0": x0.tolist(), "directions": int(D.shape[0]), "spaces": [U.label, V.label]},
        passed, profiles, witnesses, [GRID_NOTE], params.seed, params,
        time.perf_counter() - start,
    )
