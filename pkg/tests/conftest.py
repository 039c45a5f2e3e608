import pytest

from aeclab.constructions import gen_complete, gen_cycle, gen_edgeless, gen_path
from aeclab.graph_core import Graph


@pytest.fixture
def triangle() -> Graph:
    return gen_complete(3)


@pytest.fixture
def path3() -> Graph:
    return gen_path(3)


@pytest.fixture
def c5() -> Graph:
    return gen_cycle(5)


@pytest.fixture
def edge_plus_vertex() -> Graph:
    """K2 with an isolated third vertex"""
    return Graph(3, frozenset({(0, 1)}))


@pytest.fixture
def edgeless5() -> Graph:
    return gen_edgeless(5)


SAMPLE_SPEC = """\
# triangle and path
graph T { vertices: 3; edges: (0,1), (0,2), (1,2); }
graph P { vertices: 3; edges: (0,1), (1,2); }
graph B { vertices: 1; edges:; }
class K = forb(P)
relation R = fc_clique(T)
check member(T, K)
"""


@pytest.fixture
def sample_spec_text() -> str:
    return SAMPLE_SPEC
