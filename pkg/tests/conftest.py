import sys
import random

import pytest
from gmpy2 import mpq
from hypothesis import strategies as st

from cmspace.cover import get_cover
from cmspace.ring import COUNTING, LEBESGUE, RingSet

rationals = st.builds(
    lambda p, q: mpq(p, q),
    st.integers(min_value=-40, max_value=40),
    st.integers(min_value=1, max_value=6),
)


@st.composite
def lebesgue_sets(draw, max_intervals=5):
    pairs = draw(st.lists(st.tuples(rationals, rationals), max_size=max_intervals))
    return RingSet.from_intervals((min(a, b), max(a, b)) for a, b in pairs if a != b)


counting_sets = st.builds(
    RingSet.from_naturals, st.lists(st.integers(min_value=0, max_value=60), max_size=12)
)


def sample_points(*sets, n=1000, seed=0):
    """Endpoints, their neighbours and random rationals spanning all sets."""
    rng = random.Random(seed)
    pts = set()
    lo, hi = mpq(-50), mpq(50)
    for s in sets:
        for x in s.body:
            x = mpq(x)
            pts.update((x, x - mpq(1, 97), x + mpq(1, 97)))
    while len(pts) < n:
        pts.add(lo + (hi - lo) * mpq(rng.randrange(10**6), 10**6))
    return sorted(pts)[: max(n, len(pts))]


@pytest.fixture(params=[("lebesgue", "fast"), ("lebesgue", "generic"), ("counting", "fast"), ("counting", "generic")],
                ids=lambda p: f"{p[0]}-{p[1]}")
def any_cover(request):
    return get_cover(request.param[0], request.param[1])


@pytest.fixture
def leb():
    return get_cover(LEBESGUE, "fast")


@pytest.fixture
def cnt():
    return get_cover(COUNTING, "fast")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(mod.RESULTS):
            terminalreporter.write_line(mod.RESULTS[k])
