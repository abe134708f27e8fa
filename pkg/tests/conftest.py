import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from fuzclose.builders import divisor_monoid, min_chain
from fuzclose.config import Config

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def cfg():
    return Config()


@pytest.fixture(scope="session")
def d12():
    return divisor_monoid(12)


@pytest.fixture(scope="session")
def d36():
    return divisor_monoid(36)


@pytest.fixture(scope="session")
def ch2():
    return min_chain(2)


@pytest.fixture(scope="session")
def ch3():
    return min_chain(3)


@pytest.fixture(scope="session")
def ch4():
    return min_chain(4)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
