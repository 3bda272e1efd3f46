import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracle import trial_prime  # noqa: E402


def prime_ns(lo, hi):
    return [n for n in range(lo, hi + 1) if trial_prime(4 * n - 1)]


@pytest.fixture(scope="session")
def small_ns():
    """n in [4, 400] with 4n - 1 prime."""
    return prime_ns(4, 400)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
