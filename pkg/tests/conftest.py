import numpy as np
import pytest

# criterion number -> (title, passed, detail); filled by test_acceptance.py
VERDICTS = {}


@pytest.fixture(scope="session")
def verdicts():
    return VERDICTS


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(VERDICTS):
        title, ok, detail = VERDICTS[key]
        terminalreporter.write_line(f"criterion {key} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
