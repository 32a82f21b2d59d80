import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bvorder import BVFunction, Mode, Space

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

R2 = Space.lattice(2)


def e1(mode=Mode.LINEAR) -> BVFunction:
    return BVFunction(R2, [0.0, 0.5, 1.0], [[0, 0], [1, -1], [0, 0]], mode)


def ramp() -> BVFunction:
    """f(t) = (t, 2t) on [0, 1]."""
    return BVFunction(R2, [0.0, 1.0], [[0, 0], [1, 2]])


@pytest.fixture
def E1():
    return e1()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


finite = st.floats(-5, 5, allow_nan=False, allow_infinity=False)


@st.composite
def lattice_functions(draw, dim=None, max_k=8, mode=None):
    n = draw(st.integers(1, 4)) if dim is None else dim
    k = draw(st.integers(2, max_k))
    inner = draw(st.lists(st.floats(0.01, 0.99), min_size=k - 2, max_size=k - 2, unique=True))
    bps = [0.0] + sorted(inner) + [1.0]
    if np.any(np.diff(bps) <= 1e-6):
        bps = list(np.linspace(0, 1, k))
    vals = draw(st.lists(st.lists(finite, min_size=n, max_size=n), min_size=k, max_size=k))
    m = draw(st.sampled_from(list(Mode))) if mode is None else mode
    return BVFunction(Space.lattice(n), bps, vals, m)


@st.composite
def lattice_pairs(draw):
    f = draw(lattice_functions())
    g = draw(lattice_functions(dim=f.space.dim, mode=f.mode))
    return f, g


@st.composite
def sym_matrices(draw, d=None):
    d = draw(st.integers(1, 4)) if d is None else d
    m = np.array(draw(st.lists(finite, min_size=d * d, max_size=d * d))).reshape(d, d)
    return 0.5 * (m + m.T)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.LINES:
            terminalreporter.write_line(line)
