import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ifnderiv import (
    AXIOM_IDS,
    PROBABILISTIC_SUM,
    PRODUCT,
    AxiomViolationError,
    CheckParams,
    ClassicalNorm,
    DomainError,
    IFNorm,
    IFNSpace,
    MembershipPair,
    ShapeError,
    check_ifn_axioms,
    classical_norm_of,
    membership,
    standard_ifnorm,
    standard_space,
)
from ifnderiv.space import zero

HEURISTIC = {"vi-limit", "xi-limit", "xv", "xvi"}


@pytest.mark.parametrize("dim,kind,x,t,expected", [
    (1, "abs", [0.0], 5.0, (1.0, 0.0)),
    (1, "abs", [3.0], 1.0, (0.25, 0.75)),
    (2, "euclidean", [3.0, 4.0], 5.0, (0.5, 0.5)),
])
def test_standard_membership_values(dim, kind, x, t, expected):
    pair = membership(standard_space(dim, kind), x, t)
    assert (pair.mu, pair.nu) == pytest.approx(expected, abs=1e-15)


def test_scaling_instance_equal_pairs():
    U = standard_space(1, "abs")
    a, b = membership(U, [6.0], 1.0), membership(U, [3.0], 0.5)
    assert a.mu == pytest.approx(1 / 7) and a.nu == pytest.approx(6 / 7)
    assert a.mu == pytest.approx(b.mu, abs=1e-15) and a.nu == pytest.approx(b.nu, abs=1e-15)


def test_theta_is_fully_small():
    U = standard_space(3, "max")
    for t in (1e-3, 1.0, 1e3):
        assert tuple(membership(U, zero(3), t)) == (1.0, 0.0)


def test_tampered_nu_raises_axiom_violation_with_context():
    mu = lambda x, t: t / (t + abs(x[0]))  # noqa: E731
    nu = lambda x, t: min(1.0, 2 * abs(x[0]) / (t + abs(x[0])))  # noqa: E731
    U = IFNSpace(1, IFNorm(mu, nu, "tampered"))
    with pytest.raises(AxiomViolationError) as exc:
        membership(U, [3.0], 1.0)
    assert exc.value.x == [3.0] and exc.value.t == 1.0


def test_membership_errors():
    U = standard_space(2)
    with pytest.raises(DomainError):
        membership(U, [1.0, 2.0], 0.0)
    with pytest.raises(DomainError):
        membership(U, [1.0, 2.0], -1.0)
    with pytest.raises(ShapeError):
        membership(U, [1.0, 2.0, 3.0], 1.0)
    with pytest.raises(ShapeError):
        standard_space(2, "abs")
    with pytest.raises(ShapeError):
        standard_space(9)


@pytest.mark.parametrize("mu,nu", [(0.0, 0.5), (0.6, 0.6), (0.5, 1.0), (1.2, 0.0)])
def test_membership_pair_invariants(mu, nu):
    with pytest.raises(AxiomViolationError):
        MembershipPair(mu, nu)


@pytest.mark.parametrize("kind,x,expected", [("euclidean", [3, 4], 5.0), ("max", [-2, 1], 2.0),
                                             ("abs", [0], 0.0)])
def test_classical_norm(kind, x, expected):
    assert classical_norm_of(x, ClassicalNorm(kind)) == expected


def test_weighted_norm():
    assert classical_norm_of([1.0, 1.0], ClassicalNorm("weighted", (4.0, 5.0))) == 3.0
    with pytest.raises(ValueError):
        ClassicalNorm("weighted", (1.0, -1.0))


@pytest.mark.parametrize("dim,kind", [(1, "abs"), (2, "euclidean"), (3, "max"), (8, "euclidean")])
def test_standard_spaces_pass_every_axiom(dim, kind, params):
    start = time.perf_counter()
    rep = check_ifn_axioms(standard_space(dim, kind), params)
    assert time.perf_counter() - start < 10
    assert rep.passed, rep.failed
    assert [e.axiom for e in rep.entries] == list(AXIOM_IDS)
    assert {e.axiom for e in rep.entries if e.heuristic} == HEURISTIC


def test_weighted_space_passes(params):
    assert check_ifn_axioms(standard_space(2, "weighted", (1.0, 9.0)), params).passed


def test_product_pair_fails_only_idempotency(params):
    rep = check_ifn_axioms(standard_space(2, tnorm=PRODUCT, tconorm=PROBABILISTIC_SUM), params)
    assert rep.failed == ["xii"]
    w = rep.entry("xii").witness
    assert w["a"] == 0.5 and w["tnorm"] == 0.25 and w["tconorm"] == 0.75


def test_constant_maps_fail_at_theta(params):
    U = IFNSpace(2, IFNorm(lambda x, t: 0.5 + 0 * t, lambda x, t: 0.4 + 0 * t, "const", vectorized=True))
    rep = check_ifn_axioms(U, params)
    for ax in ("iii", "viii"):
        e = rep.entry(ax)
        assert not e.passed and e.witness["x"] == [0.0, 0.0]
    assert rep.entry("i").passed and rep.entry("v").passed


def test_non_monotone_norm_fails_vi(params):
    # mu decreasing in t: valid pairs, but axiom (vi) breaks
    def mu(x, t):
        n = np.linalg.norm(x, axis=-1)
        return np.where(n == 0, 1.0, 1.0 / (1.0 + t))

    def nu(x, t):
        return 1.0 - mu(x, t)

    rep = check_ifn_axioms(IFNSpace(1, IFNorm(mu, nu, "dec", vectorized=True)), params)
    assert not rep.entry("vi").passed and not rep.entry("xi").passed
    assert rep.entry("vi").witness is not None


def test_report_deterministic_and_seeded():
    p = CheckParams(sample_count=200, seed=5)
    U = standard_space(2)
    assert check_ifn_axioms(U, p).to_dict() == check_ifn_axioms(U, p).to_dict()
    assert check_ifn_axioms(U, p).seed == 5


# -- properties -------------------------------------------------------------

vec2 = arrays(np.float64, 2, elements=st.floats(-1e3, 1e3, allow_nan=False))
pos = st.floats(1e-3, 1e3)
nonzero = st.floats(-1e2, 1e2).filter(lambda c: abs(c) > 1e-3)
U2 = standard_space(2)


def mu_nu(x, t):
    m, n = U2.pairs(np.asarray(x)[None, :], t)
    return float(m[0]), float(n[0])


@settings(max_examples=200, deadline=None)
@given(vec2, pos)
def test_standard_sum_is_one(x, t):
    m, n = mu_nu(x, t)
    assert m + n == 1.0


@settings(max_examples=200, deadline=None)
@given(vec2, pos, nonzero)
def test_scaling_law(x, t, c):
    a, b = mu_nu(c * x, t), mu_nu(x, t / abs(c))
    assert a == pytest.approx(b, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(vec2, vec2, pos, pos)
def test_triangle_laws_min_max(x, y, s, t):
    mxs, nxs = mu_nu(x, s)
    myt, nyt = mu_nu(y, t)
    msum, nsum = mu_nu(x + y, s + t)
    assert min(mxs, myt) <= msum + 1e-12
    assert max(nxs, nyt) >= nsum - 1e-12


@settings(max_examples=100, deadline=None)
@given(vec2)
def test_monotone_in_t_on_grid(x):
    grid = (0.01, 0.1, 1.0, 10.0, 100.0)
    vals = [mu_nu(x, t) for t in grid]
    assert all(a[0] <= b[0] for a, b in zip(vals, vals[1:]))
    assert all(a[1] >= b[1] for a, b in zip(vals, vals[1:]))
