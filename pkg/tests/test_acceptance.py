"""Acceptance criteria 1-10, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py`` (a PASS/FAIL line per criterion is
printed in the terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import itertools
import time
from pathlib import Path

import jsonschema
import numpy as np

from ifnderiv import (
    BOUNDED_SUM,
    LUKASIEWICZ,
    MAXIMUM,
    MINIMUM,
    PROBABILISTIC_SUM,
    PRODUCT,
    CheckParams,
    LinearOperator,
    OperatorFunction,
    check_ifn_axioms,
    check_tconorm_axioms,
    check_tnorm_axioms,
    estimate_scalar_derivative,
    standard_space,
    verify_frechet,
    verify_gateaux,
    verify_scalar_derivative,
)
from ifnderiv import battery
from ifnderiv.cli import main
from ifnderiv.derivatives import compose_operators, operator_distance
from ifnderiv.limits import check_continuity, check_convergence
from ifnderiv.report import REPORT_SCHEMA, read_report

GOLDEN = Path(__file__).parent / "golden"
RESULTS = {}

ALPHA = 1e-3
SMOOTH = ("square", "cube", "exp", "sin")
OFFSET = 0.1
# candidate offsets J + m E tried in the uniqueness criterion (E has unit spectral norm)
LADDER = (0.0, 1e-6, 1e-5, 5e-5, 1e-4, 2e-4, 5e-4, 1e-3, 1e-2)


def record(n, ok, detail):
    RESULTS[n] = (bool(ok), detail)
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    return line


def operator_battery():
    """(T, x0) pairs with analytic Jacobians."""
    rng = np.random.default_rng([0, 99])
    A = rng.uniform(-2, 2, size=(3, 2))
    cases = [
        (battery.OPERATORS["poly2map"], [1.0, 2.0]), (battery.OPERATORS["poly2map"], [-0.5, 0.3]),
        (battery.OPERATORS["parabola"], [1.5]), (battery.OPERATORS["parabola"], [0.0]),
        (battery.OPERATORS["quadsum"], [1.0, -1.0]), (battery.OPERATORS["quadsum"], [0.2, 2.0]),
        (battery.sinmap(3), [0.3, -0.2, 1.0]), (battery.sinmap(1), [2.0]),
        (battery.identity(4), [1.0, 2.0, 3.0, 4.0]),
        (LinearOperator(A).as_operator("linear"), [0.5, -1.5]),
    ]
    return [(T, np.array(x)) for T, x in cases]


def jac(T, x0):
    return np.atleast_2d(T.jacobian(x0))


# ---------------------------------------------------------------------------

def criterion_1():
    p = CheckParams(sample_count=10_000, algebra_tol=1e-12)
    worst, bad = 0.0, []
    for dim, kind in ((1, "abs"), (2, "euclidean"), (3, "max")):
        start = time.perf_counter()
        rep = check_ifn_axioms(standard_space(dim, kind, tnorm=MINIMUM, tconorm=MAXIMUM), p)
        elapsed = time.perf_counter() - start
        worst = max(worst, elapsed)
        if rep.non_heuristic_failures() or not rep.passed or elapsed >= 10 or rep.samples_used < 10_000:
            bad.append((dim, kind, rep.failed, elapsed))
    return record(1, not bad, f"R^1/abs, R^2/euclidean, R^3/max: {len(bad)} spaces failing; "
                              f"slowest {worst:.2f}s (< 10s)")


def criterion_2():
    p = CheckParams()
    core = all(check_tnorm_axioms(op, p).passed for op in (MINIMUM, PRODUCT, LUKASIEWICZ))
    core &= all(check_tconorm_axioms(op, p).passed for op in (MAXIMUM, PROBABILISTIC_SUM, BOUNDED_SUM))
    wp = check_tnorm_axioms(PRODUCT, p).result("idempotent")
    ws = check_tconorm_axioms(PROBABILISTIC_SUM, p).result("idempotent")
    idem = (not wp.passed and wp.witness["a"] == 0.5 and not ws.passed and ws.witness["a"] == 0.5)
    return record(2, core and idem, f"core axioms {'ok' if core else 'BROKEN'}; idempotency witnesses "
                                    f"a={wp.witness and wp.witness['a']}, a={ws.witness and ws.witness['a']}")


def criterion_3():
    p = CheckParams(alpha=ALPHA)
    U = standard_space(1, "abs")
    max_err, problems = 0.0, []
    for name, x0 in itertools.product(SMOOTH, battery.SCALAR_POINTS):
        f = battery.scalar(name)
        oracle = float(f.derivative(x0))
        c, rep = estimate_scalar_derivative(f, x0, p)
        max_err = max(max_err, abs(c - oracle))
        if abs(c - oracle) > 1e-6 or not rep.passed:
            problems.append((name, x0, "estimate"))
        for off in (OFFSET, -OFFSET):
            if verify_scalar_derivative(f, x0, oracle + off, (U, U), p).passed:
                problems.append((name, x0, off))
    absf = battery.scalar("abs")
    abs_ok = not any(verify_scalar_derivative(absf, 0.0, c, (U, U), p).passed for c in (-1.0, 0.0, 1.0))
    return record(3, not problems and abs_ok,
                  f"16 (f, x0) cases, max |estimate - oracle| = {max_err:.1e} (<= 1e-6); "
                  f"{len(problems)} problems; |x| at 0 rejected for -1, 0, 1: {abs_ok}")


def _exact_linear_residuals(A, x0, directions, params):
    """Independent recomputation of the Gateaux residual of x -> A x."""
    hs = params.schedule.magnitudes()
    Ax0 = A @ x0
    worst = 0.0
    for d in directions:
        for s in np.concatenate([hs, -hs]):
            r = (A @ (x0 + s * d) - Ax0) / s - A @ d
            worst = max(worst, float(np.max(np.abs(r))))
    return worst


def criterion_4():
    p = CheckParams(alpha=ALPHA)
    mats = battery.random_matrices(20, seed=0, max_dim=4)
    rng = np.random.default_rng([0, 4])
    exact_fail, pass_fail, generic_worst = [], [], 0.0
    for i, A in enumerate(mats):
        T = LinearOperator(A)
        x0 = np.zeros(A.shape[1])
        rep = verify_gateaux(T, x0, A, params=p)
        worst = _exact_linear_residuals(A, x0, rep.directions, p)
        if not rep.passed or worst != 0.0:
            exact_fail.append(i)
        # generic base points: the verdict must pass, though rounding in x0 + s*d is not exact
        xr = rng.uniform(-3, 3, size=A.shape[1])
        rep_r = verify_gateaux(T, xr, A, params=p)
        generic_worst = max(generic_worst, _exact_linear_residuals(A, xr, rep_r.directions, p))
        if not rep_r.passed:
            pass_fail.append(i)
    return record(4, not exact_fail and not pass_fail,
                  f"20 matrices (dims <= 4): residual exactly 0 at x0 = 0 for {20 - len(exact_fail)}/20; "
                  f"random x0 pass {20 - len(pass_fail)}/20 (rounding residual up to {generic_worst:.1e})")


def criterion_5():
    p = CheckParams(alpha=ALPHA)
    passing, exceptions = 0, []
    for T, x0 in operator_battery():
        F = jac(T, x0)
        if verify_frechet(T, x0, F, params=p).passed:
            passing += 1
            if not verify_gateaux(T, x0, F, params=p).passed:
                exceptions.append(T.name)
    cases = len(operator_battery())
    return record(5, passing > 0 and not exceptions,
                  f"{passing}/{cases} battery cases Frechet-pass; {len(exceptions)} fail Gateaux with G = F")


def _uniqueness(verify, p):
    """(max distance between two passing candidates, bound, negative-control passes)."""
    bound = 2 * p.alpha * min(p.t_grid) / (1 - p.alpha) + 1e-9
    worst, controls = 0.0, 0
    for k, (T, x0) in enumerate(operator_battery()):
        J = jac(T, x0)
        E = np.random.default_rng([k, 31]).standard_normal(size=J.shape)
        E /= np.linalg.norm(E, 2)
        U, V = standard_space(T.domain_dim), standard_space(T.codomain_dim)
        passing, dirs = [], None
        for m in LADDER:
            rep = verify(T, x0, J + m * E, (U, V), p)
            dirs = rep.directions
            if rep.passed:
                passing.append(J + m * E)
        for G1, G2 in itertools.combinations(passing, 2):
            worst = max(worst, operator_distance(G1, G2, dirs, U, V))
        controls += verify(T, x0, J + OFFSET * E, (U, V), p).passed
    return worst, bound, controls


def criterion_6_gateaux():
    worst, bound, controls = _uniqueness(verify_gateaux, CheckParams(alpha=ALPHA))
    return worst <= bound and controls == 0, f"gateaux: max distance {worst:.3e} vs bound {bound:.3e}, " \
                                             f"{controls} controls passed"


def criterion_6_frechet():
    worst, bound, controls = _uniqueness(verify_frechet, CheckParams(alpha=ALPHA))
    return worst <= bound and controls == 0, f"frechet: max distance {worst:.3e} vs bound {bound:.3e}, " \
                                             f"{controls} controls passed"


def criterion_6():
    g_ok, g = criterion_6_gateaux()
    f_ok, f = criterion_6_frechet()
    return record(6, g_ok and f_ok, f"{g}; {f}")


def criterion_7():
    p = CheckParams(alpha=ALPHA)
    P, Q = battery.OPERATORS["parabola"], battery.OPERATORS["quadsum"]
    R = compose_operators(Q, P)
    U, V = standard_space(1), standard_space(1)
    ok, value_at_1 = True, None
    for x0 in (0.0, 1.0, 2.0):
        # chain-rule oracle: DQ(P(x0)) DP(x0) = [1, 2 x0^2] [1, 2 x0]^T
        cand = np.array([[1.0 + 4.0 * x0 ** 3]])
        assert np.allclose(cand, jac(Q, P([x0])) @ jac(P, np.array([x0])))
        if x0 == 1.0:
            value_at_1 = float(cand[0, 0])
        ok &= verify_gateaux(R, [x0], cand, (U, V), p).passed
        ok &= not verify_gateaux(R, [x0], cand + OFFSET, (U, V), p).passed
    ok &= value_at_1 == 5.0
    return record(7, ok, f"x0 in {{0, 1, 2}}: candidates [1 + 4 x0^3] pass, +0.1 fails; value at 1 = {value_at_1}")


def criterion_8():
    from ifnderiv.theorems import scalar_candidates

    p = CheckParams(alpha=ALPHA)
    U = standard_space(1, "abs")
    agree = total = 0
    both = set()
    for name in battery.SCALARS:
        f = battery.scalar(name)
        T = OperatorFunction(name, 1, 1, lambda x, f=f: np.atleast_1d(f(x[0])))
        for x0 in (0.0,) + battery.SCALAR_POINTS:
            for c in scalar_candidates(name, x0):
                s = verify_scalar_derivative(f, x0, c, (U, U), p).passed
                fr = verify_frechet(T, [x0], [[c]], (U, U), p).passed
                total += 1
                agree += s == fr
                both.add(s)
    return record(8, agree == total and both == {True, False},
                  f"{agree}/{total} verdicts agree ({100.0 * agree / total:.1f}%)")


def criterion_9(tmp_dir: Path):
    names = ["axioms_r2.cfg", "derivative_square_bad.cfg", "gateaux_poly2map.cfg", "frechet_poly2map.cfg",
             "convergence_alternating.cfg", "continuity_step.cfg", "theorems_chain_rule.cfg",
             "tnorm_lukasiewicz.cfg"]
    checks = {line.split()[0]: line.split()[1] for line in (GOLDEN / "EXPECTED").read_text().splitlines()
              if line.strip() and not line.startswith("#")}
    identical = True
    for name in names:
        texts = []
        for i in range(2):
            out = tmp_dir / f"{name}.{i}.json"
            main([checks[name], "--config", str(GOLDEN / name), "--out", str(out)])
            texts.append(out.read_bytes())
        identical &= texts[0] == texts[1]

    # monotonicity: every pass at alpha persists at 10 alpha
    violations, passes = [], 0
    U1 = standard_space(1, "abs")
    for alpha in (1e-4, 1e-3, 1e-2):
        p, q = CheckParams(alpha=alpha), CheckParams(alpha=10 * alpha)
        runs = []
        for name, x0 in itertools.product(SMOOTH, battery.SCALAR_POINTS):
            f = battery.scalar(name)
            for c in (f.derivative(x0), f.derivative(x0) + 3e-4, f.derivative(x0) + 3e-3):
                runs.append(lambda pp, f=f, x0=x0, c=c: verify_scalar_derivative(f, x0, c, (U1, U1), pp))
        for T, x0 in operator_battery():
            J = jac(T, x0)
            for off in (0.0, 5e-4, 5e-3):
                runs.append(lambda pp, T=T, x0=x0, G=J + off: verify_gateaux(T, x0, G, params=pp))
                runs.append(lambda pp, T=T, x0=x0, G=J + off: verify_frechet(T, x0, G, params=pp))
        runs.append(lambda pp: check_convergence(U1, lambda n: 1.0 / n, [0.0], pp))
        runs.append(lambda pp: check_convergence(U1, lambda n: 1e-3 + 1.0 / n, [0.0], pp))
        runs.append(lambda pp: check_continuity(np.sin, [0.4], (U1, U1), pp))
        for i, run in enumerate(runs):
            if run(p).passed:
                passes += 1
                if not run(q).passed:
                    violations.append((alpha, i))
    return record(9, identical and not violations,
                  f"byte-identical reruns of {len(names)} configs: {identical}; "
                  f"{passes} passes re-checked at 10*alpha, {len(violations)} regressions")


def criterion_10(tmp_dir: Path):
    rows = [line.split() for line in (GOLDEN / "EXPECTED").read_text().splitlines()
            if line.strip() and not line.startswith("#")]
    mismatches, invalid = [], []
    for name, check, expected in rows:
        out = tmp_dir / f"{name}.json"
        status = main([check, "--config", str(GOLDEN / name), "--out", str(out)])
        if status != int(expected):
            mismatches.append((name, status, expected))
        if status in (0, 1):
            try:
                doc = read_report(str(out))
                jsonschema.validate(doc, REPORT_SCHEMA)
                if (doc["verdict"] == "pass") != (status == 0):
                    mismatches.append((name, "verdict", doc["verdict"]))
            except (OSError, jsonschema.ValidationError) as exc:
                invalid.append((name, str(exc)[:80]))
    statuses = {int(r[2]) for r in rows}
    return record(10, len(rows) >= 10 and statuses == {0, 1, 2} and not mismatches and not invalid,
                  f"{len(rows)} golden configs, {len(mismatches)} status mismatches, "
                  f"{len(invalid)} schema-invalid reports")


# ---------------------------------------------------------------------------
# pytest entry points

def _ok(n):
    assert RESULTS[n][0], RESULTS[n][1]


def test_criterion_1_axiom_conformance():
    criterion_1()
    _ok(1)


def test_criterion_2_algebra():
    criterion_2()
    _ok(2)


def test_criterion_3_scalar_derivative():
    criterion_3()
    _ok(3)


def test_criterion_4_gateaux_of_linear_maps():
    criterion_4()
    _ok(4)


def test_criterion_5_frechet_implies_gateaux():
    criterion_5()
    _ok(5)


def test_criterion_6_uniqueness_gateaux():
    ok, detail = criterion_6_gateaux()
    print(detail)
    assert ok, detail


def test_criterion_6_uniqueness_frechet():
    # Expected to fail at the stated bound: see the project notes on the Frechet t-cancellation.
    ok, detail = criterion_6_frechet()
    print(detail)
    assert ok, detail


def test_criterion_6_summary():
    criterion_6()
    _ok(6)


def test_criterion_7_chain_rule():
    criterion_7()
    _ok(7)


def test_criterion_8_example_equivalence():
    criterion_8()
    _ok(8)


def test_criterion_9_determinism_and_monotonicity(tmp_path):
    criterion_9(tmp_path)
    _ok(9)


def test_criterion_10_cli_contract(tmp_path):
    criterion_10(tmp_path)
    _ok(10)


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as d:
        for fn in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
                   criterion_7, criterion_8):
            fn()
        criterion_9(Path(d))
        criterion_10(Path(d))
    failed = [n for n, (ok, _) in RESULTS.items() if not ok]
    print(f"{10 - len(failed)}/10 criteria pass" + (f"; failing: {failed}" if failed else ""))
    raise SystemExit(1 if failed else 0)
