import numpy as np
from hypothesis import settings, strategies as st

from pillowcase.cyclotomic import CyclotomicElement

settings.register_profile("default", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("default")

levels = st.integers(min_value=3, max_value=10)
small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def elements(draw, r=None):
    r = draw(levels) if r is None else r
    coeffs = draw(st.lists(st.integers(-20, 20), min_size=2 * r, max_size=2 * r))
    return CyclotomicElement(r, coeffs)


def t_value(r):
    return np.exp(1j * np.pi / (2 * r))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    lines = test_acceptance.acceptance_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
