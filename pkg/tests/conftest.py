import pytest

from absorbtop.specs import build_ring
from absorbtop.topology import TopologySpace


@pytest.fixture(scope="session")
def ring_cache():
    cache = {}

    def get(spec):
        if spec not in cache:
            cache[spec] = build_ring(spec)
        return cache[spec]

    return get


@pytest.fixture
def space(ring_cache):
    def make(spec, a, side="right"):
        ring = ring_cache(spec)
        return TopologySpace(ring, ring.element(a), side)

    return make


SMALL_RINGS = ["zn:2", "zn:3", "zn:4", "zn:6", "zn:8", "zn:9", "prod:zn:2,zn:2", "prod:zn:2,zn:3", "ut:f2"]


def all_small_spaces():
    """(spec, a, side) for every acting element of a handful of small rings."""
    out = []
    for spec in SMALL_RINGS:
        ring = build_ring(spec)
        for a in ring.elements():
            for side in ("right", "left"):
                out.append((spec, a, side))
    return out


CRITERION_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)
