import pytest

from freud_uvarov.recurrence import compute_recurrence

T_GRID = (0.5, 1.0, 2.0)


@pytest.fixture(scope="session")
def tab1():
    return compute_recurrence(1.0, 20)


@pytest.fixture(scope="session")
def tab0():
    return compute_recurrence(0.0, 20)


@pytest.fixture(scope="session", params=T_GRID, ids=lambda t: f"t={t}")
def tab_grid(request):
    return compute_recurrence(request.param, 20)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
