"""Fixed, versioned battery of test functions with classical oracles.

Scalar functions accept floats or numpy arrays.  Operators with
``domain_dim=None`` in the registry adapt to the dimension of ``x0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .derivatives import LinearOperator, OperatorFunction, ScalarFunction

BATTERY_VERSION = "1"

__all__ = [
    "BATTERY_VERSION",
    "SCALARS",
    "OPERATORS",
    "SEQUENCES",
    "RegistryEntry",
    "registry",
    "scalar",
    "operator",
    "sinmap",
    "identity",
    "random_matrices",
    "SCALAR_POINTS",
]


def _step(x):
    return np.where(np.asarray(x) >= 0, 1.0, 0.0)


SCALARS = {
    "square": ScalarFunction("square", lambda x: x * x, lambda x: 2.0 * x),
    "cube": ScalarFunction("cube", lambda x: x * x * x, lambda x: 3.0 * x * x),
    "exp": ScalarFunction("exp", np.exp, np.exp),
    "sin": ScalarFunction("sin", np.sin, np.cos),
    "abs": ScalarFunction("abs", np.abs, None),
    "const": ScalarFunction("const", lambda x: 3.0 + 0.0 * x, lambda x: 0.0 * x),
    "step": ScalarFunction("step", _step, None),
}

# second derivatives for the n-th order estimator tests
SECOND_DERIVATIVES = {
    "square": lambda x: 2.0,
    "cube": lambda x: 6.0 * x,
    "exp": np.exp,
    "sin": lambda x: -np.sin(x),
    "const": lambda x: 0.0,
}

SCALAR_POINTS = (-1.0, 0.5, 1.0, 2.0)


def _poly2map(x):
    return np.array([x[0] * x[0], x[0] * x[1]])


def _poly2map_jac(x):
    return np.array([[2.0 * x[0], 0.0], [x[1], x[0]]])


def _parabola(x):
    return np.array([x[0], x[0] * x[0]])


def _parabola_jac(x):
    return np.array([[1.0], [2.0 * x[0]]])


def _quadsum(y):
    return np.array([y[0] + y[1] * y[1]])


def _quadsum_jac(y):
    return np.array([[1.0, 2.0 * y[1]]])


OPERATORS = {
    "poly2map": OperatorFunction("poly2map", 2, 2, _poly2map, _poly2map_jac),
    "parabola": OperatorFunction("parabola", 1, 2, _parabola, _parabola_jac),
    "quadsum": OperatorFunction("quadsum", 2, 1, _quadsum, _quadsum_jac),
}


def sinmap(dim: int) -> OperatorFunction:
    """Componentwise sine on R^dim."""
    return OperatorFunction("sinmap", dim, dim, np.sin, lambda x: np.diag(np.cos(x)))


def identity(dim: int) -> OperatorFunction:
    return LinearOperator(np.eye(dim)).as_operator("identity")


SEQUENCES = {
    "inv_n": (lambda n: 1.0 / n, 0.0, "x_n = 1/n"),
    "alternating": (lambda n: (-1.0) ** n, None, "x_n = (-1)^n, divergent"),
    "geometric_half": (lambda n: 0.5 ** min(n, 1100), 0.0, "x_n = 2^-n"),
    "const_one": (lambda n: 1.0, 1.0, "x_n = 1"),
}


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    kind: str
    domain_dim: Optional[int]
    codomain_dim: Optional[int]
    description: str
    has_classical_oracle: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


_DESCRIPTIONS = {
    "square": "x^2", "cube": "x^3", "exp": "exp(x)", "sin": "sin(x)",
    "abs": "|x|, not differentiable at 0", "const": "constant 3",
    "step": "0 for x < 0, 1 for x >= 0",
    "poly2map": "(x1^2, x1*x2)", "parabola": "(x, x^2)", "quadsum": "y1 + y2^2",
}


def registry() -> list:
    """All battery functions, sorted by name."""
    entries = []
    for name, f in SCALARS.items():
        entries.append(RegistryEntry(name, "scalar", 1, 1, _DESCRIPTIONS[name], f.derivative is not None))
    for name, T in OPERATORS.items():
        entries.append(RegistryEntry(name, "operator", T.domain_dim, T.codomain_dim,
                                     _DESCRIPTIONS[name], True))
    entries.append(RegistryEntry("sinmap", "operator", None, None, "componentwise sin(x_i)", True))
    entries.append(RegistryEntry("identity", "operator", None, None, "identity map", True))
    entries.append(RegistryEntry("linear", "operator", None, None,
                                 "x -> A x for the matrix given under key A", True))
    for name, (_, _, desc) in SEQUENCES.items():
        entries.append(RegistryEntry(name, "sequence", None, 1, desc, False))
    return sorted(entries, key=lambda e: e.name)


def scalar(name: str) -> ScalarFunction:
    return SCALARS[name]


def operator(name: str, dim: Optional[int] = None, matrix=None) -> OperatorFunction:
    if name in OPERATORS:
        return OPERATORS[name]
    if name == "sinmap":
        return sinmap(dim)
    if name == "identity":
        return identity(dim)
    if name == "linear":
        return LinearOperator(matrix).as_operator("linear")
    raise KeyError(name)


def random_matrices(count: int, seed: int, max_dim: int = 4):
    """Seeded random matrices with shapes up to ``max_dim x max_dim``."""
    rng = np.random.default_rng([seed, 11])
    out = []
    for _ in range(count):
        m, n = rng.integers(1, max_dim + 1, size=2)
        out.append(rng.uniform(-3.0, 3.0, size=(int(m), int(n))))
    return out
