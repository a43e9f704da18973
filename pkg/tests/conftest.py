import sys
from pathlib import Path

import pytest

from regtri.hyperbolic import HyperbolicParams, RadiusSchedule, generate_hyperbolic

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def hyp10():
    return generate_hyperbolic(HyperbolicParams(RadiusSchedule.default(), 10))


@pytest.fixture(scope="session")
def hyp200():
    return generate_hyperbolic(HyperbolicParams(RadiusSchedule.default(), 200))


@pytest.fixture(scope="session")
def hyp500():
    return generate_hyperbolic(HyperbolicParams(RadiusSchedule.default(), 500))


# criterion number -> (passed, detail), filled by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture
def criterion():
    def record(number, passed, detail):
        ACCEPTANCE[number] = (bool(passed), detail)
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'}: {detail}")
        assert passed, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}: {detail}")
