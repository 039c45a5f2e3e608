"""Named graph generators and the small-graph corpora the test suites run over."""
import itertools
import logging
import random
from functools import lru_cache
from typing import Callable, Iterator, Optional

import networkx as nx

from .config import ENUMERATION_LIMIT
from .errors import GraphInputError
from .graph_core import Graph, clique_number

logger = logging.getLogger(__name__)

Triple = tuple[Graph, Graph, Graph]


def gen_edgeless(m: int) -> Graph:
    if m < 0:
        raise GraphInputError(f"edgeless graph needs m >= 0, got {m}")
    return Graph(m)


def gen_complete(m: int) -> Graph:
    if m < 0:
        raise GraphInputError(f"complete graph needs m >= 0, got {m}")
    return Graph(m, frozenset(itertools.combinations(range(m), 2)))


def gen_path(m: int) -> Graph:
    if m < 0:
        raise GraphInputError(f"path needs m >= 0, got {m}")
    return Graph(m, frozenset((i, i + 1) for i in range(m - 1)))


def gen_cycle(m: int) -> Graph:
    if m < 3:
        raise GraphInputError(f"cycle needs m >= 3, got {m}")
    return Graph(m, frozenset((i, (i + 1) % m) for i in range(m)))


def gen_example_N(mu: int, n: int) -> Graph:
    """Vertices 0..mu-1; alpha ~ beta iff both are >= n and they differ by at least n"""
    if not mu >= n >= 1:
        raise GraphInputError(f"need mu >= n >= 1, got mu={mu}, n={n}")
    edges = frozenset(
        (a, b) for a, b in itertools.combinations(range(n, mu), 2) if b - a >= n
    )
    return Graph(mu, edges)


def complement(g: Graph) -> Graph:
    return Graph.from_networkx(nx.complement(g.nx_graph))


def independence_number(g: Graph) -> int:
    return clique_number(complement(g))


def canonical_form(g: Graph) -> Graph:
    """Least sorted edge list over relabelings listing higher-degree vertices first.

    Isomorphic graphs share the same set of degree-respecting orderings, so the
    minimum is an isomorphism invariant.
    """
    by_degree = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
    groups = [list(group) for _, group in itertools.groupby(by_degree, key=g.degree)]
    best: Optional[tuple] = None
    for arrangement in itertools.product(*(itertools.permutations(group) for group in groups)):
        position = {v: i for i, v in enumerate(itertools.chain.from_iterable(arrangement))}
        edges = tuple(sorted(
            (min(position[u], position[v]), max(position[u], position[v])) for u, v in g.edges
        ))
        if best is None or edges < best:
            best = edges
    return Graph(g.order, frozenset(best or ()))


@lru_cache(maxsize=None)
def _atlas_order(m: int) -> tuple[Graph, ...]:
    return tuple(
        canonical_form(Graph.from_networkx(h)) for h in nx.graph_atlas_g() if h.number_of_nodes() == m
    )


def enumerate_graphs(m: int) -> list[Graph]:
    """One representative per isomorphism class on exactly m vertices"""
    if not 0 <= m <= ENUMERATION_LIMIT:
        raise GraphInputError(f"enumeration supports 0..{ENUMERATION_LIMIT} vertices, got {m}")
    return list(_atlas_order(m))


def enumerate_graphs_upto(m: int) -> Iterator[Graph]:
    """Every isomorphism class on at most m vertices, by order then atlas position"""
    for order in range(m + 1):
        yield from enumerate_graphs(order)


def connected_graphs_upto(m: int, min_order: int = 1) -> list[Graph]:
    return [
        g for g in enumerate_graphs_upto(m)
        if g.order >= min_order and nx.is_connected(g.nx_graph)
    ]


def random_graph(m: int, p: float, seed: int) -> Graph:
    if m < 0:
        raise GraphInputError(f"random graph needs m >= 0, got {m}")
    if not 0 <= p <= 1:
        raise GraphInputError(f"edge probability must lie in [0, 1], got {p}")
    return Graph.from_networkx(nx.gnp_random_graph(m, p, seed=seed)) if m else Graph(0)


def _extend(base: Graph, extra: int, p: float, rng: random.Random) -> Graph:
    """base plus ``extra`` new vertices, each pair touching a new vertex an edge with probability p"""
    order = base.order + extra
    edges = set(base.edges)
    for v in range(base.order, order):
        for u in range(v):
            if rng.random() < p:
                edges.add((u, v))
    return Graph(order, frozenset(edges))


def random_triples(
    count: int,
    seed: int,
    accept: Optional[Callable[[Triple], bool]] = None,
    max_base: int = 3,
    max_extra: int = 3,
) -> list[Triple]:
    """Seeded (m0, m1, m2) triples where m0 sits on the prefix vertices of m1 and m2.

    Draws are repeated until ``count`` triples pass ``accept``.
    """
    rng = random.Random(seed)
    triples: list[Triple] = []
    draws = 0
    while len(triples) < count:
        draws += 1
        p = rng.choice((0.2, 0.5, 0.8))
        m0 = _extend(Graph(0), rng.randint(0, max_base), p, rng)
        m1 = _extend(m0, rng.randint(0, max_extra), p, rng)
        m2 = _extend(m0, rng.randint(0, max_extra), p, rng)
        if accept is None or accept((m0, m1, m2)):
            triples.append((m0, m1, m2))
    logger.debug(f"random_triples: kept {count} of {draws} draws (seed {seed})")
    return triples
