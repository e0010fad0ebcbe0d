from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from weylinv import AlgebraSignature, Element
from weylinv.generate import corpus

settings.register_profile("repo", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

SIGNATURES = [AlgebraSignature(1, 0), AlgebraSignature(0, 2), AlgebraSignature(1, 1), AlgebraSignature(2, 0), AlgebraSignature(1, 2)]

scalars = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


def exponents(sig, max_degree=3):
    return st.lists(st.integers(0, sig.s - 1), max_size=max_degree).map(
        lambda idx: tuple(idx.count(i) for i in range(sig.s))
    )


def elements(sig, max_degree=3, max_terms=4):
    return st.dictionaries(exponents(sig, max_degree), scalars, max_size=max_terms).map(lambda t: Element(sig, t))


signatures = st.sampled_from(SIGNATURES)


@lru_cache(maxsize=None)
def shared_corpus():
    return tuple(corpus(200, seed=0))


@pytest.fixture(scope="session")
def automorphisms():
    return shared_corpus()


@pytest.fixture
def a1():
    return AlgebraSignature(1, 0)


@pytest.fixture
def p2():
    return AlgebraSignature(0, 2)


# one line per acceptance criterion, printed at the end of every run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
