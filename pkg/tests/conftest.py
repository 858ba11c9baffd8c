import numpy as np
import pytest

from matsuvdw.models import random_spectrum, two_level
from matsuvdw.spectrum import SpectrumModel


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def three_level():
    x = np.array([[0.0, 0.7, 0.2], [0.7, 0.0, 0.5], [0.2, 0.5, 0.0]])
    return SpectrumModel.from_dipole([0.0, 1.0, 2.5], x)


@pytest.fixture
def pair_two_level():
    return two_level(1.0, 0.5), two_level(2.0, 0.3)


@pytest.fixture
def random_four(rng):
    return random_spectrum(rng, 4), random_spectrum(rng, 4)


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    """Collects one summary line per acceptance criterion."""
    def record(number, passed, detail):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
