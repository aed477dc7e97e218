from pathlib import Path

import numpy as np
import pytest

from sizecc import WeightedInstance

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / name)


@pytest.fixture
def triangle():
    """uv:+, vz:+, uz:- with u=0, v=1, z=2; mu = 0, K = 2."""
    signs = np.array([[0, 1, -1], [1, 0, 1], [-1, 1, 0]])
    return WeightedInstance.from_signs(signs, mu=0.0, K=2)


@pytest.fixture
def k4_positive():
    return WeightedInstance.from_signs(np.ones((4, 4)), mu=1.0, K=1)


@pytest.fixture
def two_cliques():
    signs = -np.ones((4, 4))
    signs[0, 1] = signs[1, 0] = signs[2, 3] = signs[3, 2] = 1
    return WeightedInstance.from_signs(signs, mu=0.0, K=4)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
