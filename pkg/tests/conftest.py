import pytest

from fracivp import RICCATI, FractionalIVP

# filled by test_acceptance.py, printed after the run
ACCEPTANCE_RESULTS = []


@pytest.fixture
def riccati_07():
    return FractionalIVP(alpha=0.7, t0=0.0, y0=0.0, rhs=RICCATI, t_end=0.4)


@pytest.fixture
def riccati_1():
    return FractionalIVP(alpha=1.0, t0=0.0, y0=0.0, rhs=RICCATI, t_end=3.0)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] AC{number:<2d} {title}: {detail}")
