import numpy as np
import pytest

from aperiodic.alphabet import CoefficientSequence

ACCEPTANCE_LINES: list[str] = []


def rs_digit_signs(N: int) -> np.ndarray:
    """Rudin-Shapiro signs from the binary digit rule (independent of the recurrence)."""
    i = np.arange(N, dtype=np.int64)
    x = i & (i >> 1)
    pairs = np.zeros(N, dtype=np.int64)
    while x.any():
        pairs += x & 1
        x >>= 1
    return np.where(pairs % 2, -1, 1)


def signs_seq(signs) -> CoefficientSequence:
    signs = np.asarray(signs)
    return CoefficientSequence((signs < 0).astype(np.int64), 2)


@pytest.fixture
def rs8():
    return signs_seq([1, 1, 1, -1, 1, 1, -1, 1])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
