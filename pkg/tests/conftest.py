import pytest
from hypothesis import strategies as st

from barrierbot.core import validate_instance

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def fig1():
    return validate_instance(8, 0.5, [0.3, 2.6, 2.7, 3.6, 4.3, 5.2, 7.3, 7.3])


@pytest.fixture
def tiny():
    return validate_instance(2, 0.5, [2.0, 2.0])


@pytest.fixture
def tri():
    return validate_instance(4, 0.5, [1.3, 1.3, 1.3, 3.5])


@pytest.fixture
def unit():
    return validate_instance(2, 1, [1.0])


@st.composite
def instances(draw, max_n=10, end_gap=None):
    """Small instances on a half-range lattice mixed with arbitrary positions."""
    n = draw(st.integers(1, max_n))
    r = draw(st.sampled_from([0.5, 1.0, 0.3]))
    fill = draw(st.floats(0.3, 1.0))
    L = max(2 * r * n * fill, 0.1)
    want_gap = draw(st.booleans()) if end_gap is None else end_gap
    hi = L - r - 1e-6 if want_gap and L > r + 1e-6 else L
    grid = draw(st.booleans())
    if grid:
        steps = int(hi / (r / 2))
        xs = [k * r / 2 for k in draw(st.lists(st.integers(0, max(steps, 0)), min_size=n, max_size=n))]
    else:
        xs = draw(st.lists(st.floats(0.0, hi), min_size=n, max_size=n))
    return validate_instance(L, r, [min(x, hi) for x in xs])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
