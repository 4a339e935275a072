import random

import pytest
from hypothesis import strategies as hs

from nevbeta import staircase as st
from nevbeta.ideal import IdealConfig, from_generators


def vectors(dim, hi=4):
    return hs.tuples(*[hs.integers(0, hi)] * dim)


@hs.composite
def staircases(draw, dim=None, hi=4, max_gens=4):
    if dim is None:
        dim = draw(hs.integers(1, 3))
    gens = draw(hs.lists(vectors(dim, hi), min_size=1, max_size=max_gens))
    return st.reduce_antichain(gens, dim)


def random_ideal(rng, num_vars, max_gens=3, max_deg=3, support=None):
    """A random monomial ideal defining a nonempty subscheme."""
    support = list(range(num_vars)) if support is None else list(support)
    while True:
        gens = []
        for _ in range(rng.randint(1, max_gens)):
            g = [0] * num_vars
            for _ in range(rng.randint(1, max_deg)):
                g[rng.choice(support)] += 1
            gens.append(tuple(g))
        try:
            return from_generators(num_vars, gens)
        except ValueError:
            continue


def random_config(rng, num_vars, q, **kw):
    return IdealConfig(num_vars, tuple(random_ideal(rng, num_vars, **kw) for _ in range(q)))


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
