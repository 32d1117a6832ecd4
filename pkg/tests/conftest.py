import pytest

from medialq import corpus
from medialq.planar import build_planar_map


# Triangle: three degree-2 vertices in a cycle.  Face f0 = {a0, a1, a2} is the
# face whose trace starts at the smallest dart; f1 is the other one.
TRIANGLE_ROT = [["a0", "b2"], ["a1", "b0"], ["a2", "b1"]]
TRIANGLE_PAIR = [["a0", "b0"], ["a1", "b1"], ["a2", "b2"]]

# Digon: two vertices joined by two parallel edges.
DIGON_ROT = [["a0", "a1"], ["b0", "b1"]]
DIGON_PAIR = [["a0", "b0"], ["a1", "b1"]]


@pytest.fixture
def triangle():
    return build_planar_map(TRIANGLE_ROT, TRIANGLE_PAIR)


@pytest.fixture
def digon():
    return build_planar_map(DIGON_ROT, DIGON_PAIR)


@pytest.fixture(scope="session")
def corpus_maps():
    """name -> (PlanarMap, marked_edge) for every shipped diagram."""
    return {name: corpus.load(name) for name in corpus.names()}
