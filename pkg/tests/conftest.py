import pytest

from similnet.graphs import Graph


@pytest.fixture
def barbell() -> Graph:
    """Two triangles {0,1,2} and {3,4,5} joined by the bridge 2-3."""
    edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]
    return Graph(range(6), {e: 1.0 for e in edges})


@pytest.fixture
def triangle() -> Graph:
    return Graph(range(3), {(0, 1): 1.0, (0, 2): 1.0, (1, 2): 1.0})


@pytest.fixture
def path3() -> Graph:
    """Path 0-1-2."""
    return Graph(range(3), {(0, 1): 1.0, (1, 2): 1.0})


@pytest.fixture
def two_triangles() -> Graph:
    """Two disjoint triangles."""
    edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]
    return Graph(range(6), {e: 1.0 for e in edges})


@pytest.fixture
def k4_minus_edge() -> Graph:
    """K4 on {0,1,2,3} without the edge 0-1."""
    edges = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    return Graph(range(4), {e: 1.0 for e in edges})


def complete_graph(n: int) -> Graph:
    edges = {(i, j): 1.0 for i in range(n) for j in range(i + 1, n)}
    return Graph(range(n), edges)
