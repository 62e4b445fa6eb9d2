from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from affinesets import parse_system

DATA = Path(__file__).parent / "data"

settings.register_profile(
    "default",
    max_examples=200,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")


def load(name):
    return parse_system((DATA / name).read_text())


@pytest.fixture
def fractional():
    return load("fractional.txt")


@pytest.fixture
def six_var():
    return load("six_var.txt")


@pytest.fixture
def four_var():
    return load("four_var.txt")


@pytest.fixture
def minors24():
    return load("minors24.txt")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
