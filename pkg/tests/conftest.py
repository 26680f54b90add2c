import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from charcycle import Ideal, Ring  # noqa: E402

settings.register_profile("default", max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

MINORS = ("x1*x5 - x2*x4", "x1*x6 - x3*x4", "x2*x6 - x3*x5")


@pytest.fixture(scope="session")
def R6():
    return Ring([f"x{i}" for i in range(1, 7)])


@pytest.fixture(scope="session")
def R6a(R6):
    return Ring.cotangent(R6.names)


@pytest.fixture(scope="session")
def minors(R6):
    return [R6.parse(g) for g in MINORS]


@pytest.fixture(scope="session")
def minors_ideal(R6, minors):
    return Ideal(R6, minors)


# -- acceptance summary ----------------------------------------------------------

_CRITERIA: dict[str, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.outcome != "passed"):
        return
    if hasattr(rep, "wasxfail"):
        status = "FAIL" if rep.skipped else "PASS"
    else:
        status = "PASS" if rep.passed else "FAIL"
    _CRITERIA.setdefault(mark.args[0], []).append((item.name, status))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA):
        results = _CRITERIA[label]
        status = "PASS" if all(s == "PASS" for _, s in results) else "FAIL"
        failed = [n for n, s in results if s != "PASS"]
        detail = f" ({', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"criterion {label}: {status}{detail}")
