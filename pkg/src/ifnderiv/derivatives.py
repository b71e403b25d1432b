"""Verifiers and estimators for scalar, Gateaux and Frechet derivatives.

Verification never differentiates anything: it takes a candidate derivative
and certifies that the corresponding residual vanishes in the fuzzy sense,
through :func:`ifnderiv.limits.build_profile`.  Estimation is purely
classical (Richardson-extrapolated central differences) and is kept separate
so that an estimate is never trusted without a verification report.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DegenerateSampleError, NumericError, ShapeError, UnsupportedOrderError
from .limits import GRID_NOTE, CheckReport, build_profile, limit_check, memberships, profile_witness
from .params import CheckParams
from .space import IFNSpace, as_vector, standard_space

__all__ = [
    "ScalarFunction",
    "OperatorFunction",
    "LinearOperator",
    "DerivativeReport",
    "FRECHET_NOTE",
    "verify_scalar_derivative",
    "estimate_scalar_derivative",
    "estimate_nth_derivative",
    "verify_gateaux",
    "verify_frechet",
    "linear_combination_scalar",
    "linear_combination_operator",
    "compose_operators",
    "sample_directions",
    "operator_distance",
]

FRECHET_NOTE = ("inner denominators 1-mu_U(x-x0, t) and nu_U(x-x0, t) use the same t as the "
                "outer membership")
MAX_ORDER = 4
_DENOMINATOR_FLOOR = 1e-300


@dataclass(frozen=True)
class ScalarFunction:
    """A real function of one real variable; ``derivative`` is a test oracle."""

    name: str
    eval: Callable[[float], float]
    derivative: Optional[Callable[[float], float]] = field(default=None, compare=False)

    def __call__(self, x):
        return self.eval(x)


@dataclass(frozen=True)
class OperatorFunction:
    """A map ``R^domain_dim -> R^codomain_dim``; ``jacobian`` is a test oracle."""

    name: str
    domain_dim: int
    codomain_dim: int
    eval: Callable[[np.ndarray], np.ndarray]
    jacobian: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, compare=False)

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.domain_dim,):
            raise ShapeError(f"{self.name} expects a vector of dimension {self.domain_dim}, "
                             f"got shape {x.shape}")
        y = np.atleast_1d(np.asarray(self.eval(x), dtype=float))
        if y.shape != (self.codomain_dim,):
            raise ShapeError(f"{self.name} returned shape {y.shape}, expected ({self.codomain_dim},)")
        return y


class LinearOperator:
    """A matrix acting on column vectors; ``G(x) = matrix @ x``."""

    def __init__(self, matrix):
        m = np.atleast_2d(np.asarray(matrix, dtype=float))
        if m.ndim != 2 or not np.all(np.isfinite(m)):
            raise ValueError("a linear operator needs a finite 2-d matrix")
        self.matrix = m
        self.matrix.setflags(write=False)

    @property
    def domain_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def codomain_dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, x) -> np.ndarray:
        return self.matrix @ np.asarray(x, dtype=float)

    apply = __call__

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(self.matrix + other.matrix)

    def __rmul__(self, c: float) -> "LinearOperator":
        return LinearOperator(c * self.matrix)

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(self.matrix @ other.matrix)

    def __eq__(self, other):
        return isinstance(other, LinearOperator) and np.array_equal(self.matrix, other.matrix)

    def __repr__(self):
        return f"LinearOperator({self.matrix.tolist()})"

    def as_operator(self, name: str = "linear") -> OperatorFunction:
        m = self.matrix
        return OperatorFunction(name, m.shape[1], m.shape[0], lambda x: m @ x,
                                jacobian=lambda x: m.copy())

    def tolist(self):
        return self.matrix.tolist()


def _as_linear(G) -> LinearOperator:
    return G if isinstance(G, LinearOperator) else LinearOperator(G)


@dataclass
class DerivativeReport(CheckReport):
    kind: str = "scalar"
    candidate: object = None
    directions: Optional[np.ndarray] = None

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["kind"] = self.kind
        d["candidate"] = self.candidate
        return d


# ---------------------------------------------------------------------------
# scalar derivative

def _scalar_value(f, x: float) -> float:
    y = np.asarray(f(x), dtype=float)
    if y.size != 1:
        raise ShapeError(f"scalar function returned shape {y.shape}")
    y = float(y.reshape(()))
    if not math.isfinite(y):
        raise NumericError(f"f is non-finite at x={x!r}")
    return y


def _default_pair(dim_u: int, dim_v: int):
    return standard_space(dim_u), standard_space(dim_v)


def verify_scalar_derivative(f, x0: float, candidate: float, spaces=None,
                             params: Optional[CheckParams] = None) -> DerivativeReport:
    """Certify that ``candidate`` is the fuzzy derivative of ``f`` at ``x0``.

    The difference-quotient residual ``(f(x) - f(x0)) / (x - x0) - candidate``
    is driven along ``x = x0 +- h_k``; both one-sided limits must pass.
    """
    params = params or CheckParams()
    start = time.perf_counter()
    U, V = spaces or _default_pair(1, 1)
    if U.dim != 1 or V.dim != 1:
        raise ShapeError("scalar derivatives live on one-dimensional spaces")
    x0 = float(x0)
    c = float(candidate)
    if not (math.isfinite(x0) and math.isfinite(c)):
        raise ValueError("x0 and candidate must be finite")
    fx0 = _scalar_value(f, x0)

    def residual(h):
        x = x0 + h
        dx = x - x0
        if dx == 0.0:
            raise NumericError(f"step {h!r} is absorbed by x0={x0!r}", step=h)
        return (_scalar_value(f, x) - fx0) / dx - c

    profiles = [limit_check(residual, V, params, sign=s) for s in (1.0, -1.0)]
    passed = all(p.passed for p in profiles)
    return DerivativeReport(
        "scalar", {"function": getattr(f, "name", repr(f)), "x0": x0, "candidate": c},
        passed, profiles, [profile_witness(p) for p in profiles if not p.passed],
        [GRID_NOTE, "both one-sided limits checked"], params.seed, params,
        time.perf_counter() - start, kind="scalar", candidate=c,
    )


def _central(f, x0: float, h: float) -> float:
    xp, xm = x0 + h, x0 - h
    return (_scalar_value(f, xp) - _scalar_value(f, xm)) / (xp - xm)


def _ridders(f, x0: float, h0: float, rho: float, rows: int):
    """Richardson extrapolation of central differences, stopping when it degrades."""
    fac0 = (1.0 / rho) ** 2
    a = np.zeros((rows, rows))
    a[0, 0] = _central(f, x0, h0)
    best, err = a[0, 0], math.inf
    h = h0
    for i in range(1, rows):
        h *= rho
        a[0, i] = _central(f, x0, h)
        fac = fac0
        for j in range(1, i + 1):
            a[j, i] = (a[j - 1, i] * fac - a[j - 1, i - 1]) / (fac - 1.0)
            fac *= fac0
            errt = max(abs(a[j, i] - a[j - 1, i]), abs(a[j, i] - a[j - 1, i - 1]))
            if errt <= err:
                err, best = errt, a[j, i]
        if abs(a[i, i] - a[i - 1, i - 1]) >= 2.0 * err:
            break
    return float(best), float(err)


def _richardson_fixed(f, x0: float, h0: float, rho: float, rows: int) -> float:
    """Full-depth Richardson corner value; a smooth function of ``x0``."""
    fac0 = (1.0 / rho) ** 2
    col = [_central(f, x0, h0 * rho ** i) for i in range(rows)]
    for j in range(1, rows):
        fac = fac0 ** j
        col = [(fac * col[i + 1] - col[i]) / (fac - 1.0) for i in range(len(col) - 1)]
    return col[0]


def _estimator_rows(params: CheckParams) -> int:
    return max(2, min(params.schedule.steps, 12))


def estimate_scalar_derivative(f, x0: float, params: Optional[CheckParams] = None):
    """Classical estimate of ``f'(x0)`` plus its fuzzy verification report.

    Returns ``(candidate, report)``; the report may fail, e.g. for ``|x|``
    at 0 where symmetric differences cancel to 0.
    """
    params = params or CheckParams()
    s = params.schedule
    candidate, _ = _ridders(f, float(x0), s.h0, s.rho, _estimator_rows(params))
    return candidate, verify_scalar_derivative(f, x0, candidate, params=params)


def estimate_nth_derivative(f, x0: float, n: int, params: Optional[CheckParams] = None) -> float:
    """Estimate the ``n``-th derivative by iterating the first-derivative estimator.

    Inner levels use fixed-depth extrapolation on steps shrunk by ``rho`` per
    level, so each intermediate derivative is a smooth function of ``x``.
    """
    params = params or CheckParams()
    if int(n) != n or n < 1:
        raise ValueError(f"order must be a positive integer, got {n!r}")
    if n > MAX_ORDER:
        raise UnsupportedOrderError(f"order {n} exceeds the accuracy guard (max {MAX_ORDER})")
    if n == 1:
        return estimate_scalar_derivative(f, x0, params)[0]
    s = params.schedule
    g = f
    for level in range(n - 1):
        g = (lambda prev, h: (lambda x: _richardson_fixed(prev, x, h, s.rho, 6)))(g, s.h0 * s.rho ** level)
    value, _ = _ridders(g, float(x0), s.h0 * s.rho ** (n - 1), s.rho, _estimator_rows(params))
    return value


# ---------------------------------------------------------------------------
# operator derivatives

def _as_operator(T, U: IFNSpace, V: IFNSpace) -> Callable[[np.ndarray], np.ndarray]:
    def g(x):
        y = np.atleast_1d(np.asarray(T(x), dtype=float))
        if y.shape != (V.dim,):
            raise ShapeError(f"operator returned shape {y.shape}, expected ({V.dim},)")
        if not np.all(np.isfinite(y)):
            raise NumericError(f"operator is non-finite at x={x.tolist()}")
        return y
    return g


def _resolve_spaces(T, G: LinearOperator, spaces):
    if spaces is None:
        dim_u = getattr(T, "domain_dim", G.domain_dim)
        dim_v = getattr(T, "codomain_dim", G.codomain_dim)
        spaces = _default_pair(dim_u, dim_v)
    U, V = spaces
    if G.matrix.shape != (V.dim, U.dim):
        raise ShapeError(f"candidate has shape {G.matrix.shape}, expected ({V.dim}, {U.dim})")
    for attr, space in (("domain_dim", U), ("codomain_dim", V)):
        if getattr(T, attr, space.dim) != space.dim:
            raise ShapeError(f"operator {attr} does not match space dimension {space.dim}")
    return U, V


def sample_directions(U: IFNSpace, params: CheckParams, extra=None, stream: int = 6) -> np.ndarray:
    """Axis directions, then ``direction_count`` seeded random unit vectors, then ``extra``."""
    eye = np.eye(U.dim)
    rnd = params.rng(stream).standard_normal(size=(params.direction_count, U.dim))
    rnd = U.unit(rnd[np.linalg.norm(rnd, axis=1) > 1e-12]) if params.direction_count else rnd
    parts = [eye, rnd]
    if extra is not None:
        e = np.atleast_2d(np.asarray(extra, dtype=float))
        if e.shape[1] != U.dim:
            raise ShapeError(f"directions must have dimension {U.dim}")
        parts.append(e)
    return np.vstack(parts)


def verify_gateaux(T, x0, G, spaces=None, params: Optional[CheckParams] = None,
                   directions=None) -> DerivativeReport:
    """Certify ``(T(x0 + s x) - T(x0)) / s - G x -> 0`` as ``s -> 0+-`` for sampled ``x``."""
    params = params or CheckParams()
    start = time.perf_counter()
    G = _as_linear(G)
    U, V = _resolve_spaces(T, G, spaces)
    x0 = as_vector(x0, U.dim)
    op = _as_operator(T, U, V)
    Tx0 = op(x0)
    D = sample_directions(U, params, directions)
    profiles = []
    for i, x in enumerate(D):
        Gx = G(x)
        for sign, tag in ((1.0, "+"), (-1.0, "-")):
            profiles.append(limit_check(lambda s, x=x, Gx=Gx: (op(x0 + s * x) - Tx0) / s - Gx,
                                        V, params, sign=sign, label=f"d{i}{tag}"))
    passed = all(p.passed for p in profiles)
    return DerivativeReport(
        "gateaux",
        {"operator": getattr(T, "name", repr(T)), "x0": x0.tolist(), "candidate": G.tolist(),
         "directions": D.tolist()},
        passed, profiles, [profile_witness(p) for p in profiles if not p.passed],
        [GRID_NOTE, "both signs of s checked for every direction"], params.seed, params,
        time.perf_counter() - start, kind="gateaux", candidate=G.tolist(), directions=D,
    )


def _frechet_paths(D: np.ndarray, rng: np.random.Generator):
    """Straight and quadratically curved approach paths as ``(d, d2)`` pairs."""
    paths = []
    k = D.shape[0]
    for i, d in enumerate(D):
        paths.append((f"line{i}", d, None))
        bend = D[(i + 1) % k] if k > 1 else rng.choice([-1.0, 1.0], size=d.shape)
        if np.array_equal(bend, d) or np.array_equal(bend, -d):
            bend = rng.standard_normal(size=d.shape)
        paths.append((f"curve{i}", d, bend))
    return paths


def verify_frechet(T, x0, F, spaces=None, params: Optional[CheckParams] = None,
                   directions=None, points=None) -> DerivativeReport:
    """Certify the Frechet remainder condition along straight and curved paths.

    With ``x`` approaching ``x0`` and ``R = T(x) - T(x0) - F (x - x0)``, the
    values ``mu_V(R / (1 - mu_U(x - x0, t)), t)`` must tend to 1 and
    ``nu_V(R / nu_U(x - x0, t), t)`` to 0 at every grid ``t``.  ``points``
    are explicit targets; each contributes the direction ``point - x0``.
    """
    params = params or CheckParams()
    start = time.perf_counter()
    F = _as_linear(F)
    U, V = _resolve_spaces(T, F, spaces)
    x0 = as_vector(x0, U.dim)
    extra = []
    if points is not None:
        for p in np.atleast_2d(np.asarray(points, dtype=float)):
            if p.shape != (U.dim,):
                raise ShapeError(f"points must have dimension {U.dim}")
            if np.all(p == x0):
                raise DegenerateSampleError(
                    "x = x0 excluded: denominators vanish by axioms (iii)/(viii)")
            extra.append(p - x0)
    if directions is not None:
        extra.extend(np.atleast_2d(np.asarray(directions, dtype=float)))
    D = sample_directions(U, params, extra if extra else None)
    op = _as_operator(T, U, V)
    Tx0 = op(x0)
    hs = params.schedule.magnitudes()
    profiles = []
    for label, d, bend in _frechet_paths(D, params.rng(7)):
        if not np.any(d):
            raise DegenerateSampleError("x = x0 excluded: denominators vanish by axioms (iii)/(viii)")
        for sign, tag in ((1.0, "+"), (-1.0, "-")):
            steps = sign * hs
            X = x0 + steps[:, None] * d
            if bend is not None:
                X = X + (hs * hs)[:, None] * bend
            Delta = X - x0
            if np.any(np.all(Delta == 0.0, axis=1)):
                raise DegenerateSampleError(
                    "x = x0 excluded: denominators vanish by axioms (iii)/(viii)")
            R = np.array([op(x) for x in X]) - Tx0 - Delta @ F.matrix.T
            mu = np.empty((hs.size, len(params.t_grid)))
            nu = np.empty_like(mu)
            for j, t in enumerate(params.t_grid):
                mu_u, nu_u = U.pairs(Delta, t)
                den_mu, den_nu = 1.0 - mu_u, nu_u
                if np.any(den_mu < _DENOMINATOR_FLOOR) or np.any(den_nu < _DENOMINATOR_FLOOR):
                    raise DegenerateSampleError(
                        f"membership denominator below {_DENOMINATOR_FLOOR} at t={t!r}; "
                        "the increment is too small for this t")
                Rm, Rn = R / den_mu[:, None], R / den_nu[:, None]
                if not (np.all(np.isfinite(Rm)) and np.all(np.isfinite(Rn))):
                    raise NumericError(f"scaled remainder is non-finite at t={t!r}")
                mu[:, j] = V.pairs(Rm, t)[0]
                nu[:, j] = V.pairs(Rn, t)[1]
            profiles.append(build_profile(f"{label}{tag}", steps, mu, nu, params))
    passed = all(p.passed for p in profiles)
    return DerivativeReport(
        "frechet",
        {"operator": getattr(T, "name", repr(T)), "x0": x0.tolist(), "candidate": F.tolist(),
         "directions": D.tolist()},
        passed, profiles, [profile_witness(p) for p in profiles if not p.passed],
        [GRID_NOTE, FRECHET_NOTE, "straight and quadratically curved paths, both signs"],
        params.seed, params, time.perf_counter() - start,
        kind="frechet", candidate=F.tolist(), directions=D,
    )


# ---------------------------------------------------------------------------
# combinators

def linear_combination_scalar(f: ScalarFunction, g: ScalarFunction, K: float) -> ScalarFunction:
    """Pointwise ``K f + g``; the oracle is ``K f' + g'`` when both are known."""
    K = float(K)
    deriv = None
    if f.derivative is not None and g.derivative is not None:
        deriv = lambda x: K * f.derivative(x) + g.derivative(x)  # noqa: E731
    return ScalarFunction(f"{K!r}*{f.name}+{g.name}", lambda x: K * f.eval(x) + g.eval(x), deriv)


def linear_combination_operator(T1: OperatorFunction, T2: OperatorFunction, c: float) -> OperatorFunction:
    """Pointwise ``c T1 + T2``."""
    if (T1.domain_dim, T1.codomain_dim) != (T2.domain_dim, T2.codomain_dim):
        raise ShapeError("operators must share domain and codomain dimensions")
    c = float(c)
    jac = None
    if T1.jacobian is not None and T2.jacobian is not None:
        jac = lambda x: c * T1.jacobian(x) + T2.jacobian(x)  # noqa: E731
    return OperatorFunction(f"{c!r}*{T1.name}+{T2.name}", T1.domain_dim, T1.codomain_dim,
                            lambda x: c * T1(x) + T2(x), jac)


def compose_operators(Q: OperatorFunction, P: OperatorFunction) -> OperatorFunction:
    """``R = Q o P``; the oracle Jacobian follows the chain rule."""
    if P.codomain_dim != Q.domain_dim:
        raise ShapeError(f"cannot compose: P maps into R^{P.codomain_dim}, "
                         f"Q is defined on R^{Q.domain_dim}")
    jac = None
    if P.jacobian is not None and Q.jacobian is not None:
        jac = lambda x: np.atleast_2d(Q.jacobian(P(x))) @ np.atleast_2d(P.jacobian(x))  # noqa: E731
    return OperatorFunction(f"{Q.name}.{P.name}", P.domain_dim, Q.codomain_dim,
                            lambda x: Q(P(x)), jac)


def operator_distance(G1, G2, directions, U: IFNSpace, V: IFNSpace) -> float:
    """``max ||G1 x - G2 x||`` over the given directions scaled to unit length in ``U``."""
    D = np.atleast_2d(np.asarray(directions, dtype=float))
    D = U.unit(D[np.any(D != 0.0, axis=1)])
    diff = D @ (_as_linear(G1).matrix - _as_linear(G2).matrix).T
    return float(np.max(V.classical_norm(diff)))
