import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@st.composite
def forms(draw, n, k, integer=False):
    """A random k-form on R^n built from independent components."""
    from curvlab.tensors import form_from_terms
    from itertools import combinations

    idx = list(combinations(range(n), k))
    elems = st.integers(-3, 3) if integer else st.floats(-2, 2, allow_nan=False)
    vals = draw(st.lists(elems, min_size=len(idx), max_size=len(idx)))
    return form_from_terms(n, {i: float(v) for i, v in zip(idx, vals)})


seeds = st.integers(0, 2**32 - 1)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# filled by test_acceptance.py; reported once at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
