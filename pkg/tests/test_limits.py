import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ifnderiv import CheckParams, NumericError, ParameterError, standard_space
from ifnderiv.battery import SEQUENCES
from ifnderiv.limits import (
    GRID_NOTE,
    LimitSchedule,
    check_continuity,
    check_convergence,
    closed_form_pass,
    index_horizon,
    limit_check,
)

R1 = standard_space(1, "abs")
R2 = standard_space(2)


def test_schedule_defaults_and_validation():
    h = LimitSchedule().magnitudes()
    assert h.size == 30 and h[0] == 1.0 and h[-1] == 0.5 ** 29
    assert np.all(np.diff(h) < 0)
    with pytest.raises(ParameterError):
        LimitSchedule(rho=1.0)
    with pytest.raises(ParameterError):
        LimitSchedule(h0=0.0)
    with pytest.raises(ParameterError):
        LimitSchedule(rho=0.1, steps=400)  # underflows to zero


@pytest.mark.parametrize("kw,msg", [({"alpha": 1.5}, "alpha must lie in (0,1)"),
                                    ({"alpha": 0.0}, "alpha must lie in (0,1)"),
                                    ({"t_grid": ()}, "t_grid must be non-empty"),
                                    ({"tail_window": 31}, "tail_window")])
def test_params_validation(kw, msg):
    with pytest.raises(ParameterError, match=msg.replace("(", r"\(").replace(")", r"\)")):
        CheckParams(**kw)


def test_params_round_trip():
    p = CheckParams(alpha=0.01, t_grid=(0.5, 2.0), seed=3).replace(rho=0.25, steps=20)
    assert CheckParams.from_dict(p.to_dict()) == p


def test_linear_residual_passes_with_expected_deficit(params):
    prof = limit_check(lambda h: [h], R1, params)
    assert prof.passed
    assert prof.worst_t == 0.1
    h = 0.5 ** 29
    assert prof.final_deficit == pytest.approx(h / (0.1 + h), rel=1e-9)
    assert prof.final_deficit == pytest.approx(1.86e-8, rel=1e-2)


def test_offset_residual_fails_with_half_plateau(params):
    prof = limit_check(lambda h: [0.1 + h], R1, params)
    assert not prof.passed
    mu, nu = prof.final(0.1)
    assert mu == pytest.approx(0.5, abs=1e-7)
    assert prof.worst_t == 0.1


def test_zero_residual_is_exact(params):
    prof = limit_check(lambda h: [0.0, 0.0], R2, params)
    assert prof.passed and np.all(prof.mu == 1.0) and np.all(prof.nu == 0.0)


def test_nonfinite_residual_reports_step(params):
    with pytest.raises(NumericError) as exc:
        limit_check(lambda h: [np.inf if h < 1e-3 else h], R1, params)
    assert exc.value.step is not None and exc.value.step < 1e-3


def test_tail_must_be_monotone(params):
    # final value tiny but oscillating by more than the slack inside the tail window
    def r(h):
        return [1e-3 if int(round(np.log2(1 / h))) % 2 else 0.0]
    assert not limit_check(r, R1, params.replace(alpha=0.5)).passed


def test_index_horizon_increases():
    idx = index_horizon(CheckParams())
    assert idx[0] == 1 and idx[-1] == 2 ** 29 and np.all(np.diff(idx) > 0)


def test_convergence_examples(params):
    assert check_convergence(R1, lambda n: 1.0 / n, [0.0], params).passed
    rep = check_convergence(R1, lambda n: (-1.0) ** n, [0.0], params)
    assert not rep.passed
    assert rep.witnesses[0]["mu"] == pytest.approx(0.1 / 1.1, abs=1e-12)
    const = check_convergence(R2, lambda n: [1.0, -2.0], [1.0, -2.0], params)
    assert const.passed and np.all(const.profiles[0].mu == 1.0)
    assert GRID_NOTE in const.notes


def test_convergence_sees_odd_indices(params):
    # the horizon n_k = 2^k is even for k >= 1; the consecutive block catches parity
    assert not check_convergence(R1, lambda n: (-1.0) ** n, [1.0], params).passed


@pytest.mark.parametrize("name", sorted(SEQUENCES))
def test_convergence_agrees_with_classical_limit(name, params):
    fn, classical, _ = SEQUENCES[name]
    if classical is None:
        for cand in (-1.0, 0.0, 1.0):
            assert not check_convergence(R1, fn, [cand], params).passed
    else:
        assert check_convergence(R1, fn, [classical], params).passed
        assert not check_convergence(R1, fn, [classical + 0.5], params).passed


def test_continuity_examples(fast_params):
    assert check_continuity(lambda x: 2 * x, [0.3], (R1, R1), fast_params).passed
    assert check_continuity(lambda x: x, [1.0, -2.0], (R2, R2), fast_params).passed
    rep = check_continuity(lambda x: np.where(x >= 0, 1.0, 0.0), [0.0], (R1, R1), fast_params)
    assert not rep.passed
    assert any(w["direction"] == [-1.0] for w in rep.witnesses)


def test_continuity_direction_count():
    p = CheckParams(sample_count=100)
    rep = check_continuity(lambda x: x, [0.0, 0.0], (R2, R2), p)
    assert rep.inputs["directions"] == 4 + 10


# -- properties -------------------------------------------------------------

coef = st.floats(-10, 10, allow_nan=False)


@settings(max_examples=60, deadline=None)
@given(coef, coef, st.sampled_from([1e-4, 1e-3, 1e-2]))
def test_alpha_monotonicity(a, b, alpha):
    p = CheckParams(alpha=alpha)
    r = lambda h: [a * 1e-3 + b * h]  # noqa: E731
    if limit_check(r, R1, p).passed:
        assert limit_check(r, R1, p.replace(alpha=10 * alpha)).passed


@settings(max_examples=60, deadline=None)
@given(coef, coef, coef)
def test_sign_symmetry(a, b, c):
    p = CheckParams()
    r = lambda h: np.array([a * h, b * 1e-4 + c * h * h])  # noqa: E731
    assert limit_check(r, R2, p).passed == limit_check(lambda h: -r(h), R2, p).passed


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 3.0), st.sampled_from([(0.1, 1.0, 10.0), (1.0,), (0.5, 2.0)]))
def test_closed_form_cross_check(scale, grid):
    p = CheckParams(t_grid=grid)
    bound = p.alpha * min(grid) / (1 - p.alpha)
    c = scale * bound
    if abs(c - bound) < 1e-9 * bound:
        return  # too close to the boundary to be meaningful in floating point
    prof = limit_check(lambda h: [c], R1, p)
    assert prof.passed == closed_form_pass(c, p)
