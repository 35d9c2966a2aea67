import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from chronoalg.permutations import Permutation

settings.register_profile(
    "default", derandomize=True, max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def permutations(draw, min_size=0, max_size=4):
    n = draw(st.integers(min_size, max_size))
    return Permutation(draw(st.permutations(range(1, n + 1))))


@st.composite
def words(draw, letters="abc", min_size=0, max_size=3):
    from chronoalg.words import Word

    return Word(draw(st.lists(st.sampled_from(letters), min_size=min_size, max_size=max_size)))


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
