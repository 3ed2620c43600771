import random

import pytest
from hypothesis import settings

from factorlab.constructions import all_connected, complete, cycle, path, petersen, star
from factorlab.graphs import MultiGraph

settings.register_profile("suite", max_examples=60, deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def petersen_graph():
    return petersen()


@pytest.fixture(scope="session")
def named_corpus():
    """A small mixed bag of named graphs used by several invariant tests."""
    return [
        MultiGraph(1, []),
        MultiGraph(3, []),
        path(2),
        path(4),
        cycle(4),
        cycle(5),
        complete(4),
        complete(5),
        star(3),
        star(5),
        petersen(),
        MultiGraph(2, [(0, 1), (0, 1)]),
        MultiGraph(4, [(0, 1), (0, 1), (1, 2), (2, 3), (2, 3), (2, 3)]),
    ]


@pytest.fixture(scope="session")
def connected_upto_5():
    return all_connected(5)


@pytest.fixture(scope="session")
def connected_upto_6():
    return all_connected(6)


def random_simple(rng: random.Random, max_n: int = 8, p: float = 0.5) -> MultiGraph:
    n = rng.randint(1, max_n)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return MultiGraph(n, edges)


def random_multi(rng: random.Random, max_n: int = 7) -> MultiGraph:
    n = rng.randint(1, max_n)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.45:
                edges.append((u, v))
                while rng.random() < 0.2:
                    edges.append((u, v))
    return MultiGraph(n, edges)
