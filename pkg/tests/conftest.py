import numpy as np
import pytest
from hypothesis import strategies as st

from firstfit.poset import Poset

ACCEPTANCE_LINES = {}


@st.composite
def posets(draw, min_n=0, max_n=10):
    """Random strict orders: a random DAG over a random linear order, closed."""
    n = draw(st.integers(min_n, max_n))
    density = draw(st.sampled_from([0.0, 0.1, 0.25, 0.5, 0.8, 1.0]))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    tri = np.triu(rng.random((n, n)) < density, 1)
    perm = rng.permutation(n)
    rel = np.zeros((n, n), dtype=bool)
    rel[np.ix_(perm, perm)] = tri
    return Poset.from_matrix(rel)


@pytest.fixture
def two_plus_two():
    return Poset.from_cover_relations(4, [(0, 1), (2, 3)])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
