"""Runnable, battery-certified instances of the derivative theorems.

Each theorem is exercised on a fixed battery of functions and points.  Every
positive case has mutated twins (candidates shifted by 0.1) that must fail,
so a verifier that accepts everything cannot make the suite pass.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import battery
from .derivatives import (
    LinearOperator,
    OperatorFunction,
    compose_operators,
    linear_combination_operator,
    linear_combination_scalar,
    operator_distance,
    verify_frechet,
    verify_gateaux,
    verify_scalar_derivative,
)
from .errors import ParameterError
from .params import CheckParams
from .space import check_ifn_axioms, standard_space
from .tnorms import MAXIMUM, MINIMUM, TConorm, TNorm, check_tconorm_axioms, check_tnorm_axioms

__all__ = [
    "THEOREM_IDS",
    "CaseResult",
    "SuiteReport",
    "run_theorem",
    "run_all",
    "uniqueness_bound",
    "perturbation",
    "NEGATIVE_OFFSET",
    "UNIQUENESS_LADDER",
]

THEOREM_IDS = (
    "scalar_linearity",
    "gateaux_uniqueness",
    "gateaux_linearity",
    "frechet_uniqueness",
    "frechet_implies_gateaux",
    "chain_rule",
    "frechet_scalar_equivalence",
)

NEGATIVE_OFFSET = 0.1
# Candidate offsets J + m E for the uniqueness checks (E has unit spectral norm).
UNIQUENESS_LADDER = (0.0, 1e-6, 1e-5, 5e-5, 1e-4, 5e-4, 1e-3, 1e-2)

CHAIN_RULE_NOTE = ("the chain-rule hypothesis names P and Q linear, but its proof works with "
                   "nonlinear increments; the battery uses smooth nonlinear P and Q")
LINEARITY_NOTE = ("scalar linearity assumes idempotent operators (xii); the residual checks "
                  "never use the t-norm, so the pair in use is recorded, not adjudicated")


@dataclass
class CaseResult:
    theorem_id: str
    case_id: str
    expected: bool
    observed: bool
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.expected == self.observed

    def to_dict(self) -> dict:
        return {"theorem_id": self.theorem_id, "case_id": self.case_id,
                "expected": "pass" if self.expected else "fail",
                "observed": "pass" if self.observed else "fail",
                "ok": self.ok, "detail": self.detail}


@dataclass
class SuiteReport:
    cases: list
    params: CheckParams
    pair: tuple
    notes: list = field(default_factory=list)

    @property
    def seed(self) -> int:
        return self.params.seed

    @property
    def passed(self) -> bool:
        return bool(self.cases) and all(c.ok for c in self.cases)

    @property
    def failures(self) -> list:
        return [c for c in self.cases if not c.ok]

    def by_theorem(self) -> dict:
        out = {}
        for c in self.cases:
            out.setdefault(c.theorem_id, []).append(c)
        return out

    def theorem_passed(self, theorem_id: str) -> bool:
        cases = self.by_theorem().get(theorem_id, [])
        return bool(cases) and all(c.ok for c in cases)

    def counts(self) -> dict:
        return {tid: {"cases": len(cs), "ok": sum(c.ok for c in cs)}
                for tid, cs in self.by_theorem().items()}

    def to_dict(self) -> dict:
        return {
            "check_id": "theorems",
            "inputs": {"tnorm": self.pair[0], "tconorm": self.pair[1]},
            "verdict": "pass" if self.passed else "fail",
            "profiles": [],
            "witnesses": [c.to_dict() for c in self.failures],
            "notes": list(self.notes),
            "seed": self.seed,
            "params": self.params.to_dict(),
            "counts": self.counts(),
            "theorems": {tid: ("pass" if self.theorem_passed(tid) else "fail")
                         for tid in self.by_theorem() if tid in THEOREM_IDS},
            "axiom_suites": {tid: ("pass" if self.theorem_passed(tid) else "fail")
                             for tid in self.by_theorem() if tid not in THEOREM_IDS},
            "cases": [c.to_dict() for c in self.cases],
        }


def uniqueness_bound(kind: str, params: CheckParams, slack: float = 1e-9) -> float:
    """Largest distance two passing candidates can have under the standard norm.

    A Gateaux pass bounds the final residual by ``alpha * t / (1 - alpha)`` at
    the smallest grid ``t``.  The Frechet remainder is rescaled by
    ``(t + |h|) / |h|``, which cancels ``t``, so its bound has no ``min(t)``.
    """
    a = params.alpha
    if kind == "gateaux":
        return 2.0 * a * min(params.t_grid) / (1.0 - a) + slack
    if kind == "frechet":
        return 2.0 * a / (1.0 - a) + slack
    raise ValueError(kind)


def perturbation(shape, seed: int) -> np.ndarray:
    """Seeded matrix with unit spectral norm."""
    E = np.random.default_rng([seed, 13]).standard_normal(size=shape)
    return E / np.linalg.norm(E, 2)


class _Spaces:
    def __init__(self, tnorm: TNorm, tconorm: TConorm):
        self.tnorm, self.tconorm = tnorm, tconorm
        self._cache = {}

    def __call__(self, dim: int):
        if dim not in self._cache:
            self._cache[dim] = standard_space(dim, "euclidean", tnorm=self.tnorm, tconorm=self.tconorm)
        return self._cache[dim]

    def pair(self, T):
        return self(T.domain_dim), self(T.codomain_dim)


def _operator_cases(seed: int):
    """``(T, x0)`` battery for the operator theorems."""
    A = np.random.default_rng([seed, 17]).uniform(-2.0, 2.0, size=(3, 2))
    return [
        (battery.OPERATORS["poly2map"], np.array([1.0, 2.0])),
        (battery.OPERATORS["parabola"], np.array([1.5])),
        (battery.OPERATORS["quadsum"], np.array([1.0, -1.0])),
        (battery.sinmap(3), np.array([0.3, -0.2, 1.0])),
        (LinearOperator(A).as_operator("linear3x2"), np.array([0.5, -1.5])),
    ]


def _jac(T: OperatorFunction, x0) -> np.ndarray:
    return np.atleast_2d(np.asarray(T.jacobian(np.asarray(x0, dtype=float)), dtype=float))


# ---------------------------------------------------------------------------
# individual theorems

def _scalar_linearity(params, spaces):
    U = spaces(1)
    fs = ("square", "cube", "exp", "sin")
    combos = (("sin", 3.0), ("exp", -2.0), ("cube", 0.5))
    cases = []
    for x0 in (0.5, 2.0):
        for fname, (gname, K) in itertools.product(fs, combos):
            f, g = battery.scalar(fname), battery.scalar(gname)
            cf, cg = float(f.derivative(x0)), float(g.derivative(x0))
            hyp = (verify_scalar_derivative(f, x0, cf, (U, U), params).passed
                   and verify_scalar_derivative(g, x0, cg, (U, U), params).passed)
            h = linear_combination_scalar(f, g, K)
            target = K * cf + cg
            cid = f"{K:g}*{fname}+{gname}@{x0:g}"
            ok = verify_scalar_derivative(h, x0, target, (U, U), params).passed
            cases.append(CaseResult("scalar_linearity", cid, True, hyp and ok,
                                    {"candidate": target, "hypothesis": hyp}))
            for off in (NEGATIVE_OFFSET, -NEGATIVE_OFFSET):
                bad = verify_scalar_derivative(h, x0, target + off, (U, U), params).passed
                cases.append(CaseResult("scalar_linearity", f"{cid}{off:+g}", False, bad,
                                        {"candidate": target + off}))
    return cases


def _uniqueness(kind, params, spaces):
    verify = verify_gateaux if kind == "gateaux" else verify_frechet
    tid = f"{kind}_uniqueness"
    bound = uniqueness_bound(kind, params)
    cases = []
    for i, (T, x0) in enumerate(_operator_cases(params.seed)):
        U, V = spaces.pair(T)
        J = _jac(T, x0)
        E = perturbation(J.shape, params.seed + i)
        passing, dirs = [], None
        for m in UNIQUENESS_LADDER:
            rep = verify(T, x0, J + m * E, (U, V), params)
            dirs = rep.directions
            if rep.passed:
                passing.append((m, J + m * E))
        worst = 0.0
        for (m1, G1), (m2, G2) in itertools.combinations(passing, 2):
            worst = max(worst, operator_distance(G1, G2, dirs, U, V))
        cases.append(CaseResult(tid, f"{T.name}@{x0.tolist()}", True,
                                bool(passing) and passing[0][0] == 0.0 and worst <= bound,
                                {"passing_offsets": [m for m, _ in passing],
                                 "max_distance": worst, "bound": bound}))
        bad = verify(T, x0, J + NEGATIVE_OFFSET * E, (U, V), params).passed
        cases.append(CaseResult(tid, f"{T.name}@{x0.tolist()}+{NEGATIVE_OFFSET:g}E", False, bad))
    return cases


def _gateaux_linearity(params, spaces):
    A = np.array([[1.0, -2.0], [0.5, 3.0]])
    B = np.array([[2.0, 1.0]])
    pairs = [
        (battery.OPERATORS["poly2map"], LinearOperator(A).as_operator("A2x2"), 2.0, [1.0, 2.0]),
        (battery.sinmap(2), battery.OPERATORS["poly2map"], -0.5, [0.3, 0.7]),
        (battery.OPERATORS["quadsum"], LinearOperator(B).as_operator("B1x2"), 3.0, [1.0, -1.0]),
        (battery.sinmap(3), battery.identity(3), 1.5, [0.1, 0.2, -0.4]),
    ]
    cases = []
    for k, (T1, T2, c, x0) in enumerate(pairs):
        x0 = np.array(x0)
        UV = spaces.pair(T1)
        J1, J2 = _jac(T1, x0), _jac(T2, x0)
        hyp = (verify_gateaux(T1, x0, J1, UV, params).passed
               and verify_gateaux(T2, x0, J2, UV, params).passed)
        T = linear_combination_operator(T1, T2, c)
        G = c * J1 + J2
        cid = f"{c:g}*{T1.name}+{T2.name}@{x0.tolist()}"
        ok = verify_gateaux(T, x0, G, UV, params).passed
        cases.append(CaseResult("gateaux_linearity", cid, True, hyp and ok, {"hypothesis": hyp}))
        E = perturbation(G.shape, params.seed + 100 + k)
        bad = verify_gateaux(T, x0, G + NEGATIVE_OFFSET * E, UV, params).passed
        cases.append(CaseResult("gateaux_linearity", f"{cid}+{NEGATIVE_OFFSET:g}E", False, bad))
    return cases


def _frechet_implies_gateaux(params, spaces):
    cases = []
    for i, (T, x0) in enumerate(_operator_cases(params.seed)):
        UV = spaces.pair(T)
        J = _jac(T, x0)
        fr = verify_frechet(T, x0, J, UV, params).passed
        ga = verify_gateaux(T, x0, J, UV, params).passed
        cid = f"{T.name}@{x0.tolist()}"
        cases.append(CaseResult("frechet_implies_gateaux", cid, True, fr and ga,
                                {"frechet": fr, "gateaux": ga}))
        E = perturbation(J.shape, params.seed + 200 + i)
        bad = verify_frechet(T, x0, J + NEGATIVE_OFFSET * E, UV, params).passed
        cases.append(CaseResult("frechet_implies_gateaux", f"{cid}+{NEGATIVE_OFFSET:g}E", False, bad))
    return cases


def _chain_rule(params, spaces):
    combos = [(battery.OPERATORS["parabola"], battery.OPERATORS["quadsum"], [x])
              for x in (0.0, 1.0, 2.0)]
    combos.append((battery.sinmap(2), battery.OPERATORS["poly2map"], [0.4, -0.3]))
    cases = []
    for P, Q, x0 in combos:
        x0 = np.array(x0)
        y0 = P(x0)
        JP, JQ = _jac(P, x0), _jac(Q, y0)
        hyp = (verify_gateaux(P, x0, JP, spaces.pair(P), params).passed
               and verify_frechet(Q, y0, JQ, spaces.pair(Q), params).passed)
        R = compose_operators(Q, P)
        G = JQ @ JP
        UV = spaces.pair(R)
        cid = f"{Q.name}.{P.name}@{x0.tolist()}"
        ok = verify_gateaux(R, x0, G, UV, params).passed
        cases.append(CaseResult("chain_rule", cid, True, hyp and ok,
                                {"candidate": G.tolist(), "hypothesis": hyp}))
        bad = verify_gateaux(R, x0, G + NEGATIVE_OFFSET, UV, params).passed
        cases.append(CaseResult("chain_rule", f"{cid}+{NEGATIVE_OFFSET:g}", False, bad,
                                {"candidate": (G + NEGATIVE_OFFSET).tolist()}))
    return cases


def scalar_candidates(name: str, x0: float):
    """Oracle value and its 0.1-shifted twins; fixed triples where no oracle exists."""
    f = battery.scalar(name)
    if name == "abs" and x0 == 0.0:
        return [-1.0, 0.0, 1.0]
    if name == "step" and x0 == 0.0:
        return [-NEGATIVE_OFFSET, 0.0, NEGATIVE_OFFSET]
    if f.derivative is None:
        c = float(np.sign(x0)) if name == "abs" else 0.0
    else:
        c = float(f.derivative(x0))
    return [c, c - NEGATIVE_OFFSET, c + NEGATIVE_OFFSET]


def _frechet_scalar_equivalence(params, spaces):
    U = spaces(1)
    cases = []
    for name in battery.SCALARS:
        f = battery.scalar(name)
        T = OperatorFunction(name, 1, 1, lambda x, f=f: np.atleast_1d(f(x[0])))
        for x0 in (0.0,) + battery.SCALAR_POINTS:
            for c in scalar_candidates(name, x0):
                s = verify_scalar_derivative(f, x0, c, (U, U), params).passed
                fr = verify_frechet(T, [x0], [[c]], (U, U), params).passed
                cases.append(CaseResult("frechet_scalar_equivalence", f"{name}@{x0:g}:{c:g}",
                                        True, s == fr, {"scalar": s, "frechet": fr}))
    return cases


_RUNNERS = {
    "scalar_linearity": _scalar_linearity,
    "gateaux_uniqueness": lambda p, s: _uniqueness("gateaux", p, s),
    "gateaux_linearity": _gateaux_linearity,
    "frechet_uniqueness": lambda p, s: _uniqueness("frechet", p, s),
    "frechet_implies_gateaux": _frechet_implies_gateaux,
    "chain_rule": _chain_rule,
    "frechet_scalar_equivalence": _frechet_scalar_equivalence,
}


def _notes(tnorm, tconorm):
    return ["battery-certified: theorems are checked on a fixed battery, not for all inputs",
            f"battery version {battery.BATTERY_VERSION}",
            f"pair in use: ({tnorm.label}, {tconorm.label})",
            CHAIN_RULE_NOTE, LINEARITY_NOTE]


def run_theorem(theorem_id: str, params: Optional[CheckParams] = None,
                tnorm: TNorm = MINIMUM, tconorm: TConorm = MAXIMUM) -> SuiteReport:
    if theorem_id not in _RUNNERS:
        raise ValueError(f"unknown theorem id {theorem_id!r}; choose from {list(THEOREM_IDS)}")
    params = params or CheckParams()
    cases = _RUNNERS[theorem_id](params, _Spaces(tnorm, tconorm))
    return SuiteReport(cases, params, (tnorm.label, tconorm.label), _notes(tnorm, tconorm))


def run_all(params: Optional[CheckParams] = None, tnorm: TNorm = MINIMUM,
            tconorm: TConorm = MAXIMUM, axiom_dims=(1, 2, 3)) -> SuiteReport:
    """Every theorem plus the norm-axiom and t-norm/t-conorm axiom suites."""
    params = params or CheckParams()
    if not params.t_grid:
        raise ParameterError("t_grid must be non-empty")
    spaces = _Spaces(tnorm, tconorm)
    cases = []
    for tid in THEOREM_IDS:
        cases.extend(_RUNNERS[tid](params, spaces))
    for dim in axiom_dims:
        rep = check_ifn_axioms(spaces(dim), params)
        for e in rep.entries:
            cases.append(CaseResult("ifn_axioms", f"R^{dim}:({e.axiom})", True, e.passed,
                                    {"heuristic": e.heuristic, "witness": e.witness}))
    for rep in (check_tnorm_axioms(tnorm, params), check_tconorm_axioms(tconorm, params)):
        for r in rep.results:
            if r.axiom == "idempotent":
                continue
            cases.append(CaseResult("algebra_axioms", f"{rep.operator}:{r.axiom}", True, r.passed,
                                    {"heuristic": r.heuristic, "witness": r.witness}))
    return SuiteReport(cases, params, (tnorm.label, tconorm.label), _notes(tnorm, tconorm))
