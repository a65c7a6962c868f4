import pathlib

import numpy as np
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[1]
CIRCUITS = ROOT / "circuits"

TURCHETTE = (20.0, 75.0, 2.5)
DAYAN = (70.0, 165.0, 2.6)


@pytest.fixture
def rng():
    return np.random.default_rng(20160324)


def random_qubit(rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return tuple(v / np.linalg.norm(v))


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
