import numpy as np
import pytest

from causalcodes.field import field_for


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def f17():
    return field_for(17)


@pytest.fixture
def big():
    return field_for(2**31 - 1)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
