"""Intuitionistic fuzzy normed spaces on R^n and certificate-style derivative checks."""

from .errors import (
    AxiomViolationError,
    ConfigError,
    DegenerateSampleError,
    DomainError,
    EvaluationError,
    IFNError,
    NumericError,
    ParameterError,
    ShapeError,
    UnsupportedOrderError,
)
from .params import CheckParams, LimitSchedule
from .tnorms import (
    BOUNDED_SUM,
    LUKASIEWICZ,
    MAXIMUM,
    MINIMUM,
    PROBABILISTIC_SUM,
    PRODUCT,
    AlgebraCheckReport,
    TConorm,
    TNorm,
    check_tconorm_axioms,
    check_tnorm_axioms,
    eval_tconorm,
    eval_tnorm,
)
from .space import (
    AXIOM_IDS,
    AxiomReport,
    ClassicalNorm,
    IFNorm,
    IFNSpace,
    MembershipPair,
    check_ifn_axioms,
    classical_norm_of,
    membership,
    standard_ifnorm,
    standard_space,
)
from .limits import CheckReport, LimitProfile, check_continuity, check_convergence, limit_check
from .derivatives import (
    DerivativeReport,
    LinearOperator,
    OperatorFunction,
    ScalarFunction,
    estimate_nth_derivative,
    estimate_scalar_derivative,
    verify_frechet,
    verify_gateaux,
    verify_scalar_derivative,
)
from .theorems import THEOREM_IDS, SuiteReport, run_all, run_theorem

__version__ = "0.1.0"
