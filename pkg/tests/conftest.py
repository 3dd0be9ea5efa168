import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from localuid.graph import Graph, cycle_graph, path_graph, star_graph  # noqa: E402


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def triangle():
    return Graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def star4():
    return star_graph(4)
