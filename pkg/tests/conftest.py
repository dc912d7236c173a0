import numpy as np
import pytest
from hypothesis import strategies as st

from relaynet.model import ChannelRealization

ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)


@pytest.fixture
def orthogonal_channels():
    return ChannelRealization(np.array([1.0, 0.0]), np.array([0.0, 1.0]), 1.0, 1.0)


@pytest.fixture
def skewed_channels():
    return ChannelRealization(np.array([1.0, 0.0]), np.array([0.6, 0.8]), 1.0, 1.0)


# rounded so squared norms never underflow
finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False).map(
    lambda x: round(x, 6)
)


@st.composite
def complex_vectors(draw, m=None, min_m=1, max_m=6):
    if m is None:
        m = draw(st.integers(min_m, max_m))
    re = draw(st.lists(finite, min_size=m, max_size=m))
    im = draw(st.lists(finite, min_size=m, max_size=m))
    return np.array(re) + 1j * np.array(im)


@st.composite
def channel_realizations(draw, min_m=2, max_m=6):
    m = draw(st.integers(min_m, max_m))
    h1 = draw(complex_vectors(m=m))
    h2 = draw(complex_vectors(m=m))
    if np.vdot(h1, h1).real < 1e-6 or np.vdot(h2, h2).real < 1e-6:
        h1 = h1 + 1.0
        h2 = h2 - 1.0j
    h3 = complex(draw(finite), draw(finite))
    h4 = complex(draw(finite), draw(finite))
    return ChannelRealization(h1, h2, h3, h4)
