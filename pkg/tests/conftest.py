import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from majur import builtin_measurement

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_criteria: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or "::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[name] = ("PASS" if report.outcome == "passed" else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        verdict, duration = _criteria[name]
        terminalreporter.write_line(f"{verdict}  {name}  ({duration:.2f} s)")
    passed = sum(v == "PASS" for v, _ in _criteria.values())
    terminalreporter.write_line(f"{passed}/{len(_criteria)} criteria passed")


@pytest.fixture(scope="session")
def ms():
    return {name: builtin_measurement(name) for name in ("A", "B", "C1", "C2", "C3")}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
