import os

import hypothesis
import numpy as np
import pytest

from hypermds import linesearch

hypothesis.settings.register_profile("default", deadline=None, max_examples=100)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=10)
hypothesis.settings.load_profile("default")

# every line search in the suite verifies its own acceptance contract
linesearch.CHECK_CONTRACT = True
os.environ["HYPERMDS_CHECK_LINESEARCH"] = "1"  # inherited by replicate worker processes


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_disk(rng, n, radius=0.95):
    rho = radius * np.sqrt(rng.uniform(0, 1, n))
    return rho * np.exp(2j * np.pi * rng.uniform(0, 1, n))


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def verdict(capsys):
    """Print one PASS/FAIL line for an acceptance criterion, then assert it."""

    def report(number, name, ok, detail, seconds=None):
        timing = f" [{seconds:.1f}s]" if seconds is not None else ""
        line = f"CRITERION {number} {'PASS' if ok else 'FAIL'}: {name}: {detail}{timing}"
        _ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
