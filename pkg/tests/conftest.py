import itertools

import pytest

from fastzz.filtration import (
    ZigzagFiltration,
    gen_clique_zigzag,
    gen_random_zigzag,
    gen_updown_shuffle,
    random_edge_events,
)

UV = "i 0\ni 1\ni 0 1\nd 0 1\nd 0\nd 1\n"


@pytest.fixture
def uv():
    return ZigzagFiltration.from_pairs(
        [("i", [0]), ("i", [1]), ("i", [0, 1]), ("d", [0, 1]), ("d", [0]), ("d", [1])]
    )


def random_corpus(count, max_length=40, seed0=0):
    """Seeded random filtrations, varying vertex count, length and dimension."""
    out = []
    for seed in itertools.count(seed0):
        if len(out) == count:
            return out
        verts = 3 + seed % 4
        max_dim = 1 + seed % 2
        target = 6 + (seed * 7) % (max_length - 10)
        f = gen_random_zigzag(verts, target, max_dim, seed)
        if len(f) <= max_length:
            out.append(f)


def clique_corpus(count, max_length=60, seed0=0):
    out = []
    for seed in itertools.count(seed0):
        if len(out) == count:
            return out
        events = random_edge_events(5 + seed % 3, 6 + seed % 10, seed, density=0.5)
        f = gen_clique_zigzag(events, 2)
        while len(f) > max_length:
            events = events[:-1]
            f = gen_clique_zigzag(events, 2)
        out.append(f)


def updown_corpus(count, max_length=60, seed0=0):
    out = []
    for seed in itertools.count(seed0):
        if len(out) == count:
            return out
        f = gen_updown_shuffle(4 + seed % 4, 0.5, 2, seed)
        if len(f) <= max_length:
            out.append(f)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
