"""Intuitionistic fuzzy norms on R^n and sampled verification of their axioms.

An IF-norm is a pair of maps ``mu(x, t)``, ``nu(x, t)`` on ``R^n x (0, inf)``.
The standard construction built from a classical norm is

    mu(x, t) = t / (t + |x|),    nu(x, t) = |x| / (t + |x|).

Maps may be *vectorized*: given ``x`` of shape ``(m, n)`` and ``t`` of shape
``(m,)`` they return shape ``(m,)``.  Non-vectorized maps take one vector and
one float and are looped over by the checker.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import AxiomViolationError, DomainError, EvaluationError, ShapeError
from .params import CheckParams
from .tnorms import MAXIMUM, MINIMUM, TConorm, TNorm

__all__ = [
    "MAX_DIM",
    "as_vector",
    "zero",
    "ClassicalNorm",
    "classical_norm_of",
    "MembershipPair",
    "IFNorm",
    "IFNSpace",
    "AxiomEntry",
    "AxiomReport",
    "standard_ifnorm",
    "standard_space",
    "membership",
    "check_ifn_axioms",
    "AXIOM_IDS",
]

MAX_DIM = 8

# Sum tolerance for mu + nu <= 1; the standard construction is exact.
_SUM_TOL = 1e-12


def as_vector(x, dim: Optional[int] = None) -> np.ndarray:
    """Coerce ``x`` to a finite 1-d float array, optionally checking its length."""
    v = np.atleast_1d(np.asarray(x, dtype=float))
    if v.ndim != 1 or v.size < 1:
        raise ShapeError(f"expected a non-empty 1-d vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"vector entries must be finite, got {v}")
    if dim is not None and v.size != dim:
        raise ShapeError(f"expected a vector of dimension {dim}, got {v.size}")
    return v


def zero(dim: int) -> np.ndarray:
    return np.zeros(dim)


@dataclass(frozen=True)
class ClassicalNorm:
    """A classical norm on R^n: ``abs`` (n = 1), ``euclidean``, ``max``, or ``weighted``."""

    kind: str = "euclidean"
    weights: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in ("abs", "euclidean", "max", "weighted"):
            raise ValueError(f"unknown classical norm kind {self.kind!r}")
        if self.kind == "weighted":
            if not self.weights:
                raise ValueError("weighted norm needs positive weights")
            w = tuple(float(x) for x in self.weights)
            if not all(math.isfinite(x) and x > 0 for x in w):
                raise ValueError("weights must be positive finite reals")
            object.__setattr__(self, "weights", w)
        elif self.weights is not None:
            raise ValueError(f"{self.kind} norm takes no weights")

    def check_dim(self, dim: int) -> None:
        if self.kind == "abs" and dim != 1:
            raise ShapeError("the abs norm is defined on R^1 only")
        if self.kind == "weighted" and len(self.weights) != dim:
            raise ShapeError(f"{len(self.weights)} weights given for dimension {dim}")

    def __call__(self, x) -> np.ndarray:
        """Norm along the last axis; scalar for a single vector."""
        x = np.asarray(x, dtype=float)
        if self.kind == "abs":
            return np.abs(x[..., 0])
        if self.kind == "max":
            return np.max(np.abs(x), axis=-1)
        if self.kind == "weighted":
            return np.sqrt(np.sum(np.asarray(self.weights) * x * x, axis=-1))
        return np.linalg.norm(x, axis=-1)


def classical_norm_of(x, norm: ClassicalNorm) -> float:
    v = as_vector(x)
    norm.check_dim(v.size)
    return float(norm(v))


@dataclass(frozen=True)
class MembershipPair:
    mu: float
    nu: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.nu)):
            raise AxiomViolationError(f"non-finite membership pair ({self.mu}, {self.nu})")
        if not 0.0 < self.mu <= 1.0:
            raise AxiomViolationError(f"mu = {self.mu!r} must lie in (0, 1]")
        if not 0.0 <= self.nu < 1.0:
            raise AxiomViolationError(f"nu = {self.nu!r} must lie in [0, 1)")
        if self.mu + self.nu > 1.0 + _SUM_TOL:
            raise AxiomViolationError(f"mu + nu = {self.mu} + {self.nu} > 1")

    def __iter__(self):
        return iter((self.mu, self.nu))


@dataclass(frozen=True)
class IFNorm:
    mu_map: Callable
    nu_map: Callable
    label: str = "custom"
    vectorized: bool = False
    classical: Optional[ClassicalNorm] = field(default=None, compare=False)

    def evaluate(self, x, t):
        """Raw ``(mu, nu)`` arrays for a batch ``x`` (m, n) and ``t`` (m,)."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        t = np.broadcast_to(np.asarray(t, dtype=float), (x.shape[0],))
        if self.vectorized:
            mu = np.asarray(self.mu_map(x, t), dtype=float)
            nu = np.asarray(self.nu_map(x, t), dtype=float)
            mu, nu = np.broadcast_to(mu, t.shape), np.broadcast_to(nu, t.shape)
        else:
            mu = np.array([float(self.mu_map(xi, float(ti))) for xi, ti in zip(x, t)])
            nu = np.array([float(self.nu_map(xi, float(ti))) for xi, ti in zip(x, t)])
        if not (np.all(np.isfinite(mu)) and np.all(np.isfinite(nu))):
            i = int(np.flatnonzero(~(np.isfinite(mu) & np.isfinite(nu)))[0])
            raise EvaluationError(f"{self.label}: non-finite membership at x={x[i]}, t={t[i]}",
                                  inputs=(x[i].tolist(), float(t[i])))
        return mu, nu


def standard_ifnorm(norm: ClassicalNorm = ClassicalNorm()) -> IFNorm:
    """``mu = t/(t+|x|)``, ``nu = |x|/(t+|x|)`` for the given classical norm.

    The smaller of the two values is computed directly and the larger as its
    complement, which keeps ``mu + nu == 1`` exact in floating point.
    """

    def _pair(x, t):
        n = norm(x)
        small_nu = n <= t
        with np.errstate(divide="ignore", invalid="ignore"):
            nu_direct = n / (t + n)
            mu_direct = t / (t + n)
        nu = np.where(small_nu, nu_direct, 1.0 - mu_direct)
        mu = np.where(small_nu, 1.0 - nu_direct, mu_direct)
        return mu, nu

    label = f"standard[{norm.kind}]"
    return IFNorm(lambda x, t: _pair(x, t)[0], lambda x, t: _pair(x, t)[1],
                  label=label, vectorized=True, classical=norm)


@dataclass(frozen=True)
class IFNSpace:
    dim: int
    norm: IFNorm
    tnorm: TNorm = MINIMUM
    tconorm: TConorm = MAXIMUM

    def __post_init__(self):
        if int(self.dim) != self.dim or not 1 <= self.dim <= MAX_DIM:
            raise ShapeError(f"dimension must be an integer in [1, {MAX_DIM}], got {self.dim!r}")
        if self.norm.classical is not None:
            self.norm.classical.check_dim(self.dim)

    @property
    def label(self) -> str:
        return f"R^{self.dim}/{self.norm.label}/{self.tnorm.label},{self.tconorm.label}"

    def unit(self, x) -> np.ndarray:
        """Scale rows of ``x`` to unit length in the carrier's classical norm."""
        x = np.asarray(x, dtype=float)
        cl = self.norm.classical or ClassicalNorm("euclidean")
        n = np.asarray(cl(x))
        return x / n[..., None]

    def classical_norm(self, x):
        cl = self.norm.classical or ClassicalNorm("euclidean")
        return cl(np.asarray(x, dtype=float))

    def pairs(self, x, t):
        """Batch ``(mu, nu)`` with range and sum checks; ``x`` is (m, dim)."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        if x.shape[-1] != self.dim:
            raise ShapeError(f"expected vectors of dimension {self.dim}, got {x.shape[-1]}")
        t = np.broadcast_to(np.asarray(t, dtype=float), (x.shape[0],))
        if np.any(~(t > 0)):
            raise DomainError("t must be positive")
        mu, nu = self.norm.evaluate(x, t)
        bad = (mu < 0) | (mu > 1) | (nu < 0) | (nu > 1) | (mu + nu > 1 + _SUM_TOL)
        if np.any(bad):
            i = int(np.flatnonzero(bad)[0])
            raise AxiomViolationError(
                f"invalid membership pair ({mu[i]!r}, {nu[i]!r}) at x={x[i].tolist()}, t={t[i]!r}",
                x=x[i].tolist(), t=float(t[i]))
        return mu, nu


def standard_space(dim: int, kind: str = "euclidean", weights=None,
                   tnorm: TNorm = MINIMUM, tconorm: TConorm = MAXIMUM) -> IFNSpace:
    if kind == "abs" and dim != 1:
        raise ShapeError("the abs norm is defined on R^1 only")
    return IFNSpace(dim, standard_ifnorm(ClassicalNorm(kind, weights)), tnorm, tconorm)


def membership(space: IFNSpace, x, t: float) -> MembershipPair:
    t = float(t)
    if not (math.isfinite(t) and t > 0):
        raise DomainError(f"t must be a positive real, got {t!r}")
    v = as_vector(x, space.dim)
    mu, nu = space.norm.evaluate(v[None, :], np.array([t]))
    try:
        return MembershipPair(float(mu[0]), float(nu[0]))
    except AxiomViolationError as exc:
        raise AxiomViolationError(f"{exc} at x={v.tolist()}, t={t!r}", x=v.tolist(), t=t) from None


# ---------------------------------------------------------------------------
# axiom checking

AXIOM_IDS = ("i", "ii", "iii", "iv", "v", "vi", "vi-limit", "vii", "viii", "ix", "x",
             "xi", "xi-limit", "xii", "xiii", "xiv", "xv", "xvi")
_HEURISTIC = {"vi-limit", "xi-limit", "xv", "xvi"}


@dataclass
class AxiomEntry:
    axiom: str
    passed: bool
    heuristic: bool
    witness: Optional[dict] = None
    checked: int = 0

    def to_dict(self) -> dict:
        return {"axiom": self.axiom, "passed": self.passed, "heuristic": self.heuristic,
                "witness": self.witness, "checked": self.checked}


@dataclass
class AxiomReport:
    space: str
    entries: list
    seed: int
    samples_used: int

    def entry(self, axiom: str) -> AxiomEntry:
        for e in self.entries:
            if e.axiom == axiom:
                return e
        raise KeyError(axiom)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def failed(self) -> list:
        return [e.axiom for e in self.entries if not e.passed]

    def non_heuristic_failures(self) -> list:
        return [e.axiom for e in self.entries if not e.passed and not e.heuristic]

    def to_dict(self) -> dict:
        return {"space": self.space, "passed": self.passed, "seed": self.seed,
                "samples_used": self.samples_used,
                "entries": [e.to_dict() for e in self.entries]}


def _sample_vectors(dim: int, n: int, rng: np.random.Generator) -> np.ndarray:
    eye = np.eye(dim)
    special = np.vstack([np.zeros((1, dim)), eye, -eye, 10.0 * np.ones((1, dim)),
                         -10.0 * np.ones((1, dim))])
    return np.vstack([special, rng.uniform(-10.0, 10.0, size=(n, dim))])


def _sample_times(grid, n: int, rng: np.random.Generator) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    lo, hi = math.log(grid.min()), math.log(grid.max())
    cont = np.exp(rng.uniform(lo, hi, size=n)) if hi > lo else np.full(n, grid[0])
    picks = rng.choice(grid, size=n)
    return np.where(rng.random(n) < 0.5, picks, cont)


def _sample_scalars(n: int, rng: np.random.Generator) -> np.ndarray:
    c = rng.uniform(-10.0, 10.0, size=n)
    c = np.where(np.abs(c) < 1e-3, 1.0, c)
    return np.concatenate([[-1.0, 2.0, 0.5, -0.25], c])[:n]


def _witness(**kw) -> dict:
    out = {}
    for k, v in kw.items():
        if v is None:
            out[k] = None
        elif np.ndim(v) == 0:
            out[k] = float(v)
        else:
            out[k] = [float(e) for e in np.ravel(v)]
    return out


def check_ifn_axioms(space: IFNSpace, params: Optional[CheckParams] = None) -> AxiomReport:
    """Check axioms (i)-(xvi) on sampled vectors, scalars and times.

    Every entry records the first failing sample as a witness.  Limit and
    strict-monotonicity axioms are only checked heuristically on the grid.
    """
    params = params or CheckParams()
    rng = params.rng(3)
    dim = space.dim
    n = params.sample_count
    tol = params.algebra_tol
    X = _sample_vectors(dim, n, rng)
    Y = _sample_vectors(dim, n, rng)
    Y[: 2 * dim + 3] = Y[: 2 * dim + 3][::-1]  # pair special vectors with different partners
    m = X.shape[0]
    S = _sample_times(params.axiom_t_grid, m, rng)
    T = _sample_times(params.axiom_t_grid, m, rng)
    C = _sample_scalars(m, rng)
    is_zero = np.all(X == 0.0, axis=1)

    ev = space.norm.evaluate
    mu_xt, nu_xt = ev(X, T)
    entries = {}

    def put(axiom, ok, wit):
        ok = np.asarray(ok, dtype=bool)
        bad = np.flatnonzero(~ok)
        w = wit(int(bad[0])) if bad.size else None
        entries[axiom] = AxiomEntry(axiom, not bad.size, axiom in _HEURISTIC, w, int(ok.size))

    put("i", (mu_xt + nu_xt <= 1.0 + tol) & (mu_xt >= 0) & (mu_xt <= 1) & (nu_xt >= 0) & (nu_xt <= 1),
        lambda i: _witness(x=X[i], t=T[i], mu=mu_xt[i], nu=nu_xt[i]))
    put("ii", mu_xt > 0, lambda i: _witness(x=X[i], t=T[i], mu=mu_xt[i]))
    put("vii", nu_xt < 1, lambda i: _witness(x=X[i], t=T[i], nu=nu_xt[i]))
    # (iii)/(viii): at theta the value is 1 (resp. 0) for every t, elsewhere never.
    put("iii", np.where(is_zero, np.abs(mu_xt - 1.0) <= tol, mu_xt < 1.0),
        lambda i: _witness(x=X[i], t=T[i], mu=mu_xt[i]))
    put("viii", np.where(is_zero, np.abs(nu_xt) <= tol, nu_xt > 0.0),
        lambda i: _witness(x=X[i], t=T[i], nu=nu_xt[i]))

    # (iv)/(ix): mu(cx, t) = mu(x, t/|c|)
    mu_cx, nu_cx = ev(C[:, None] * X, T)
    mu_sc, nu_sc = ev(X, T / np.abs(C))
    put("iv", np.abs(mu_cx - mu_sc) <= tol,
        lambda i: _witness(x=X[i], c=C[i], t=T[i], lhs=mu_cx[i], rhs=mu_sc[i]))
    put("ix", np.abs(nu_cx - nu_sc) <= tol,
        lambda i: _witness(x=X[i], c=C[i], t=T[i], lhs=nu_cx[i], rhs=nu_sc[i]))

    # (v)/(x): triangle-type laws through the space's t-norm / t-conorm
    mu_xs, nu_xs = ev(X, S)
    mu_yt, nu_yt = ev(Y, T)
    mu_sum, nu_sum = ev(X + Y, S + T)
    lhs_mu = space.tnorm.apply(mu_xs, mu_yt)
    lhs_nu = space.tconorm.apply(nu_xs, nu_yt)
    put("v", lhs_mu <= mu_sum + tol,
        lambda i: _witness(x=X[i], y=Y[i], s=S[i], t=T[i], lhs=lhs_mu[i], rhs=mu_sum[i]))
    put("x", lhs_nu >= nu_sum - tol,
        lambda i: _witness(x=X[i], y=Y[i], s=S[i], t=T[i], lhs=lhs_nu[i], rhs=nu_sum[i]))

    # (vi)/(xi) and (xv)/(xvi): profiles over the sorted grid plus T_max
    grid = np.array(sorted(set(params.axiom_t_grid)) + [params.T_max])
    G = grid.size
    mu_g, nu_g = ev(np.repeat(X, G, axis=0), np.tile(grid, m))
    mu_g, nu_g = mu_g.reshape(m, G), nu_g.reshape(m, G)
    dmu, dnu = np.diff(mu_g, axis=1), np.diff(nu_g, axis=1)

    def grid_wit(vals, name):
        return lambda i: _witness(x=X[i], t_grid=grid, **{name: vals[i]})

    put("vi", np.all(dmu >= -tol, axis=1), grid_wit(mu_g, "mu"))
    put("xi", np.all(dnu <= tol, axis=1), grid_wit(nu_g, "nu"))
    put("vi-limit", mu_g[:, -1] >= 1.0 - params.limit_tol,
        lambda i: _witness(x=X[i], t=params.T_max, mu=mu_g[i, -1]))
    put("xi-limit", nu_g[:, -1] <= params.limit_tol,
        lambda i: _witness(x=X[i], t=params.T_max, nu=nu_g[i, -1]))

    nz = ~is_zero[:, None]
    inner_mu = (mu_g[:, :-1] > 0) & (mu_g[:, :-1] < 1) & (mu_g[:, 1:] > 0) & (mu_g[:, 1:] < 1)
    inner_nu = (nu_g[:, :-1] > 0) & (nu_g[:, :-1] < 1) & (nu_g[:, 1:] > 0) & (nu_g[:, 1:] < 1)
    put("xv", np.all(~(nz & inner_mu) | (dmu > 0), axis=1), grid_wit(mu_g, "mu"))
    put("xvi", np.all(~(nz & inner_nu) | (dnu < 0), axis=1), grid_wit(nu_g, "nu"))

    # (xiii)/(xiv), sampled contrapositive: x != theta leaves the extremes at some grid t
    put("xiii", is_zero | np.any(mu_g[:, :-1] < 1.0 - params.strict_tol, axis=1),
        grid_wit(mu_g, "mu"))
    put("xiv", is_zero | np.any(nu_g[:, :-1] > params.strict_tol, axis=1),
        grid_wit(nu_g, "nu"))

    # (xii): idempotency of the space's t-norm and t-conorm
    a = np.concatenate([[0.0, 1.0, 0.5], rng.uniform(0.0, 1.0, size=n)])
    ta, sa = space.tnorm.apply(a, a), space.tconorm.apply(a, a)
    alg_tol = params.custom_algebra_tol if (space.tnorm.is_custom or space.tconorm.is_custom) else tol
    put("xii", (np.abs(ta - a) <= alg_tol) & (np.abs(sa - a) <= alg_tol),
        lambda i: _witness(a=a[i], tnorm=ta[i], tconorm=sa[i]))

    return AxiomReport(space.label, [entries[k] for k in AXIOM_IDS], params.seed, m)
