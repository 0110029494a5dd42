import pytest

from hypermono.registry import builtin_case, builtin_certificate


@pytest.fixture(scope="session")
def c47():
    return builtin_case("C-47")


@pytest.fixture(scope="session")
def c55():
    return builtin_case("C-55")


@pytest.fixture(scope="session")
def cert47():
    return builtin_certificate("C-47", pin_omega=False)


@pytest.fixture(scope="session")
def cert55():
    return builtin_certificate("C-55", pin_omega=False)


# one summary line per acceptance criterion

_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance[report.nodeid] = report.outcome
    elif report.when == "setup" and report.outcome != "passed" and "test_acceptance.py" in report.nodeid:
        _acceptance[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _acceptance.items():
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
