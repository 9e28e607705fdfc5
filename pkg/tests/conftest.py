import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20231014)


def adjoint_gap(apply, adjoint, x, y):
    """Normalized inner-product gap |<Lx, y> - <x, L^T y>| / (||x|| ||y||)."""
    lhs = np.vdot(apply(x), y)
    rhs = np.vdot(x, adjoint(y))
    return abs(lhs - rhs) / (np.linalg.norm(x) * np.linalg.norm(y))


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion checked by a test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = dict(report.user_properties).get("criterion")
    if marker is not None:
        _ACCEPTANCE[marker] = report.outcome


def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        item.user_properties.append(("criterion", (mark.args[0], mark.args[1])))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (number, text), outcome in sorted(_ACCEPTANCE.items()):
        status = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        terminalreporter.write_line(f"[{status}] criterion {number}: {text}")
