import math

import numpy as np
import pytest

from mixedstars import MixedSpinState

ACCEPTANCE_LINES: list[str] = []

TWICE_S = [1, 2, 3, 4, 5]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def basis_state(twice_s: int, n: int, up: bool) -> MixedSpinState:
    vec = np.zeros(2 * (twice_s + 1), dtype=complex)
    vec[2 * n + int(up)] = 1.0
    return MixedSpinState.from_vector(twice_s, vec)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def wrapped(a: float, b: float) -> float:
    return abs((a - b + math.pi) % (2 * math.pi) - math.pi)
