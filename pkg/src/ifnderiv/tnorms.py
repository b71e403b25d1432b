"""Continuous t-norms and t-conorms, and sampled checks of their axioms.

Built-in operators are evaluated with closed forms written so that the
boundary law (``a * 1 = a``, ``a <> 0 = a``) and commutativity hold exactly
in floating point, not merely up to rounding.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import EvaluationError
from .params import CheckParams

__all__ = [
    "TNorm",
    "TConorm",
    "MINIMUM",
    "PRODUCT",
    "LUKASIEWICZ",
    "MAXIMUM",
    "PROBABILISTIC_SUM",
    "BOUNDED_SUM",
    "AxiomResult",
    "AlgebraCheckReport",
    "as_unit",
    "eval_tnorm",
    "eval_tconorm",
    "check_tnorm_axioms",
    "check_tconorm_axioms",
    "tnorm_by_name",
    "tconorm_by_name",
]

_TNORM_KINDS = ("minimum", "product", "lukasiewicz", "custom")
_TCONORM_KINDS = ("maximum", "probabilistic_sum", "bounded_sum", "custom")


def as_unit(value) -> float:
    """Validate a member of the unit interval and return it as a float."""
    v = float(value)
    if not (math.isfinite(v) and 0.0 <= v <= 1.0):
        raise ValueError(f"{value!r} is not in [0, 1]")
    return v


@dataclass(frozen=True)
class _BinaryOp:
    kind: str
    func: Optional[Callable[[float, float], float]] = field(default=None, compare=False)
    name: str = ""

    @property
    def label(self) -> str:
        return self.name or self.kind

    @property
    def is_custom(self) -> bool:
        return self.kind == "custom"

    def __call__(self, a, b) -> float:
        return float(self.apply(np.float64(as_unit(a)), np.float64(as_unit(b))))

    def apply(self, a, b):
        """Evaluate on arrays (or scalars) already known to lie in [0, 1]."""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        if self.is_custom:
            return _apply_custom(self, a, b)
        return self._closed_form(a, b)

    def _closed_form(self, a, b):  # pragma: no cover - overridden
        raise NotImplementedError


def _apply_custom(op: _BinaryOp, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a, b = np.broadcast_arrays(a, b)
    out = np.empty(a.shape, dtype=float)
    for idx in np.ndindex(a.shape):
        x, y = float(a[idx]), float(b[idx])
        v = op.func(x, y)
        try:
            v = float(v)
        except (TypeError, ValueError):
            raise EvaluationError(f"{op.label}({x!r}, {y!r}) returned non-numeric {v!r}",
                                  inputs=(x, y)) from None
        if not (math.isfinite(v) and 0.0 <= v <= 1.0):
            raise EvaluationError(f"{op.label}({x!r}, {y!r}) = {v!r} is outside [0, 1]",
                                  inputs=(x, y))
        out[idx] = v
    return out


@dataclass(frozen=True)
class TNorm(_BinaryOp):
    """A continuous t-norm; ``kind`` is one of minimum, product, lukasiewicz, custom."""

    def __post_init__(self):
        if self.kind not in _TNORM_KINDS:
            raise ValueError(f"unknown t-norm kind {self.kind!r}")
        if self.is_custom and not callable(self.func):
            raise ValueError("a custom t-norm needs a callable func")

    @classmethod
    def custom(cls, func, name: str = "custom") -> "TNorm":
        return cls("custom", func, name)

    def _closed_form(self, a, b):
        if self.kind == "minimum":
            return np.minimum(a, b)
        if self.kind == "product":
            return a * b
        # max(a + b - 1, 0), arranged so that a * 1 == a exactly.
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        return np.maximum(lo - (1.0 - hi), 0.0)


@dataclass(frozen=True)
class TConorm(_BinaryOp):
    """A continuous t-conorm; ``kind`` is one of maximum, probabilistic_sum, bounded_sum, custom."""

    def __post_init__(self):
        if self.kind not in _TCONORM_KINDS:
            raise ValueError(f"unknown t-conorm kind {self.kind!r}")
        if self.is_custom and not callable(self.func):
            raise ValueError("a custom t-conorm needs a callable func")

    @classmethod
    def custom(cls, func, name: str = "custom") -> "TConorm":
        return cls("custom", func, name)

    def _closed_form(self, a, b):
        if self.kind == "maximum":
            return np.maximum(a, b)
        if self.kind == "probabilistic_sum":
            return np.minimum(a + b - a * b, 1.0)
        return np.minimum(a + b, 1.0)


MINIMUM = TNorm("minimum")
PRODUCT = TNorm("product")
LUKASIEWICZ = TNorm("lukasiewicz")
MAXIMUM = TConorm("maximum")
PROBABILISTIC_SUM = TConorm("probabilistic_sum")
BOUNDED_SUM = TConorm("bounded_sum")

_TNORMS = {op.kind: op for op in (MINIMUM, PRODUCT, LUKASIEWICZ)}
_TCONORMS = {op.kind: op for op in (MAXIMUM, PROBABILISTIC_SUM, BOUNDED_SUM)}


def tnorm_by_name(name: str) -> TNorm:
    try:
        return _TNORMS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown t-norm {name!r}; choose from {sorted(_TNORMS)}") from None


def tconorm_by_name(name: str) -> TConorm:
    try:
        return _TCONORMS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown t-conorm {name!r}; choose from {sorted(_TCONORMS)}") from None


def eval_tnorm(op: TNorm, a, b) -> float:
    return op(a, b)


def eval_tconorm(op: TConorm, a, b) -> float:
    return op(a, b)


@dataclass
class AxiomResult:
    axiom: str
    passed: bool
    heuristic: bool = False
    witness: Optional[dict] = None
    checked: int = 0

    def to_dict(self) -> dict:
        return {"axiom": self.axiom, "passed": self.passed, "heuristic": self.heuristic,
                "witness": self.witness, "checked": self.checked}


@dataclass
class AlgebraCheckReport:
    """Per-axiom outcome of a sampled t-norm / t-conorm check.

    ``passed`` covers commutativity, associativity, boundary, monotonicity
    and the continuity heuristic; idempotency is reported but never counts.
    """

    operator: str
    results: list
    samples_used: int
    seed: int

    def result(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results if r.axiom != "idempotent")

    @property
    def idempotent(self) -> bool:
        return self.result("idempotent").passed

    def to_dict(self) -> dict:
        return {"operator": self.operator, "passed": self.passed,
                "samples_used": self.samples_used, "seed": self.seed,
                "results": [r.to_dict() for r in self.results]}


def _boundary_points(params: CheckParams) -> np.ndarray:
    pts = [0.0, 1.0, 0.5] + [t for t in params.t_grid if 0.0 <= t <= 1.0]
    return np.array(list(dict.fromkeys(pts)), dtype=float)


def _first_failure(mask: np.ndarray) -> Optional[int]:
    bad = np.flatnonzero(~mask)
    return int(bad[0]) if bad.size else None


def _result(axiom, ok, witness_fn, heuristic=False) -> AxiomResult:
    i = _first_failure(ok)
    return AxiomResult(axiom, i is None, heuristic, None if i is None else witness_fn(i), int(ok.size))


def _check_axioms(op: _BinaryOp, identity: float, params: CheckParams, stream: int) -> AlgebraCheckReport:
    tol = params.custom_algebra_tol if op.is_custom else params.algebra_tol
    rng = params.rng(stream)
    n = params.sample_count
    B = _boundary_points(params)
    R = rng.uniform(0.0, 1.0, size=(n, 4))
    f = op.apply
    results = []

    # commutativity
    pairs = np.array(list(itertools.product(B, B)), dtype=float)
    a = np.concatenate([pairs[:, 0], R[:, 0]])
    b = np.concatenate([pairs[:, 1], R[:, 1]])
    ab, ba = f(a, b), f(b, a)
    results.append(_result("commutative", np.abs(ab - ba) <= tol,
                           lambda i: {"a": a[i], "b": b[i], "c": None, "d": None,
                                      "lhs": ab[i], "rhs": ba[i]}))

    # associativity
    triples = np.array(list(itertools.product(B, B, B)), dtype=float)
    a = np.concatenate([triples[:, 0], R[:, 0]])
    b = np.concatenate([triples[:, 1], R[:, 1]])
    c = np.concatenate([triples[:, 2], R[:, 2]])
    left, right = f(f(a, b), c), f(a, f(b, c))
    results.append(_result("associative", np.abs(left - right) <= tol,
                           lambda i: {"a": a[i], "b": b[i], "c": c[i], "d": None,
                                      "lhs": left[i], "rhs": right[i]}))

    # boundary: a * 1 = a  (resp. a <> 0 = a)
    a = np.concatenate([B, R[:, 0]])
    val = f(a, np.full_like(a, identity))
    results.append(_result("boundary", np.abs(val - a) <= tol,
                           lambda i: {"a": a[i], "b": identity, "c": None, "d": None,
                                      "lhs": val[i], "rhs": a[i]}))

    # monotonicity: a <= c, b <= d  =>  a op b <= c op d
    quads = np.array(list(itertools.product(B, B, B, B)), dtype=float)
    Q = np.concatenate([quads, R])
    a, c = np.minimum(Q[:, 0], Q[:, 2]), np.maximum(Q[:, 0], Q[:, 2])
    b, d = np.minimum(Q[:, 1], Q[:, 3]), np.maximum(Q[:, 1], Q[:, 3])
    lo, hi = f(a, b), f(c, d)
    results.append(_result("monotone", lo <= hi + tol,
                           lambda i: {"a": a[i], "b": b[i], "c": c[i], "d": d[i],
                                      "lhs": lo[i], "rhs": hi[i]}))

    # continuity, as a bounded-modulus heuristic
    step = params.continuity_step
    a = np.concatenate([pairs[:, 0], R[:, 0]])
    b = np.concatenate([pairs[:, 1], R[:, 1]])
    u = rng.uniform(-1.0, 1.0, size=(a.size, 2))
    a2 = np.clip(a + step * u[:, 0], 0.0, 1.0)
    b2 = np.clip(b + step * u[:, 1], 0.0, 1.0)
    v1, v2 = f(a, b), f(a2, b2)
    results.append(_result("continuous", np.abs(v1 - v2) <= params.continuity_bound,
                           lambda i: {"a": a[i], "b": b[i], "c": a2[i], "d": b2[i],
                                      "lhs": v1[i], "rhs": v2[i]},
                           heuristic=True))

    # idempotency (supplemental; reported separately)
    a = np.concatenate([B, R[:, 0]])
    aa = f(a, a)
    results.append(_result("idempotent", np.abs(aa - a) <= tol,
                           lambda i: {"a": a[i], "b": a[i], "c": None, "d": None,
                                      "lhs": aa[i], "rhs": a[i]}))

    for r in results:
        if r.witness is not None:
            r.witness = {k: (None if v is None else float(v)) for k, v in r.witness.items()}
    return AlgebraCheckReport(op.label, results, n, params.seed)


def check_tnorm_axioms(op: TNorm, params: Optional[CheckParams] = None) -> AlgebraCheckReport:
    """Sample the t-norm axioms; witnesses are the first failing sample."""
    return _check_axioms(op, 1.0, params or CheckParams(), stream=1)


def check_tconorm_axioms(op: TConorm, params: Optional[CheckParams] = None) -> AlgebraCheckReport:
    """Sample the t-conorm axioms; the boundary law is ``a <> 0 = a``."""
    return _check_axioms(op, 0.0, params or CheckParams(), stream=2)
