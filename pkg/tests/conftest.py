from __future__ import annotations

import random

import pytest
from hypothesis import settings, strategies as st

from cantor_potential import Geometric, Polynomial, Q
from cantor_potential import sampling

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

GEO = Geometric(Q(3, 2))
CORE = (Geometric(Q(3, 2)), Geometric(1), Polynomial(1))
CORE_IDS = ["geo3/2", "geo1", "poly1"]


@pytest.fixture(params=CORE, ids=CORE_IDS)
def kernel(request):
    return request.param


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def antichains(draw, alphabet=2, max_depth=4, nonempty=False):
    rng = random.Random(draw(seeds))
    return sampling.random_antichain(rng, alphabet, max_depth, nonempty=nonempty)


@st.composite
def measures(draw, alphabet=2, max_depth=4, atoms=False):
    rng = random.Random(draw(seeds))
    return sampling.random_measure(rng, alphabet, max_depth, atoms=atoms)


@st.composite
def orders(draw, max_depth=5):
    rng = random.Random(draw(seeds))
    S = sampling.random_antichain(rng, 2, max_depth)
    return sampling.random_order(rng, S)


rationals = st.builds(Q, st.integers(1, 30), st.integers(1, 30))


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
