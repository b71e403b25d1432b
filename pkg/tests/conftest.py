import pytest

from ifnderiv import CheckParams


@pytest.fixture
def params():
    return CheckParams()


@pytest.fixture
def fast_params():
    # fewer samples for tests that only need the code path
    return CheckParams(sample_count=500)


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, when they ran."""
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
