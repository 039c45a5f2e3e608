"""Finite simple graphs and the combinatorial primitives every other module uses.

Vertices are the dense identifiers ``0..order-1``. Every embedding in this
package is an *induced* embedding: it preserves adjacency and non-adjacency.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

import networkx as nx
from networkx.algorithms import isomorphism

from .errors import GraphInputError

logger = logging.getLogger(__name__)

Edge = tuple[int, int]
VertexSet = frozenset[int]


@dataclass(frozen=True)
class Graph:
    order: int
    edges: frozenset[Edge] = frozenset()

    def __post_init__(self):
        if self.order < 0:
            raise GraphInputError(f"graph order must be non-negative, got {self.order}")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise GraphInputError(f"loop ({u},{v}) is not allowed")
            if not (0 <= u < self.order and 0 <= v < self.order):
                raise GraphInputError(f"edge ({u},{v}) out of range for {self.order} vertices")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        relabeled = nx.convert_node_labels_to_integers(graph, ordering="sorted")
        return cls(relabeled.number_of_nodes(), frozenset(relabeled.edges()))

    @property
    def vertices(self) -> range:
        return range(self.order)

    @property
    def size(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        neighbours: list[set[int]] = [set() for _ in range(self.order)]
        for u, v in self.edges:
            neighbours[u].add(v)
            neighbours[v].add(u)
        return tuple(frozenset(n) for n in neighbours)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def nx_graph(self) -> nx.Graph:
        """networkx view of the graph; shared, so callers must not mutate it"""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.order))
        graph.add_edges_from(self.edges)
        return graph

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def check_vertices(self, vertices: Iterable[int]) -> VertexSet:
        members = frozenset(vertices)
        bad = sorted(v for v in members if not 0 <= v < self.order)
        if bad:
            raise GraphInputError(f"vertices {bad} out of range for {self.order} vertices")
        return members

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={list(self.sorted_edges)})"


@dataclass(frozen=True)
class Embedding:
    """Induced embedding: ``mapping[v]`` is the image of host vertex ``v``"""
    host: Graph
    target: Graph
    mapping: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.mapping[v]

    @property
    def image(self) -> VertexSet:
        return frozenset(self.mapping)

    def is_valid(self) -> bool:
        if len(self.mapping) != self.host.order or len(set(self.mapping)) != len(self.mapping):
            return False
        if any(not 0 <= x < self.target.order for x in self.mapping):
            return False
        return all(
            self.host.has_edge(u, v) == self.target.has_edge(self.mapping[u], self.mapping[v])
            for u, v in itertools.combinations(range(self.host.order), 2)
        )


@dataclass(frozen=True)
class Partition:
    blocks: tuple[VertexSet, ...]

    @cached_property
    def block_index(self) -> dict[int, int]:
        return {v: i for i, block in enumerate(self.blocks) for v in block}

    def block_of(self, v: int) -> VertexSet:
        return self.blocks[self.block_index[v]]

    def __len__(self) -> int:
        return len(self.blocks)


@lru_cache(maxsize=None)
def components(g: Graph) -> Partition:
    """Connected components, listed by smallest member"""
    blocks = [frozenset(c) for c in nx.connected_components(g.nx_graph)]
    return Partition(tuple(sorted(blocks, key=min)))


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``s`` plus the order-preserving renumbering old -> new"""
    members = g.check_vertices(s)
    renumber = {v: i for i, v in enumerate(sorted(members))}
    edges = frozenset(
        (renumber[u], renumber[v]) for u, v in g.edges if u in renumber and v in renumber
    )
    return Graph(len(renumber), edges), renumber


def induced(g: Graph, s: Iterable[int]) -> Graph:
    return induced_subgraph(g, s)[0]


def enumerate_induced_embeddings(h: Graph, g: Graph, cap: Optional[int] = None) -> list[Embedding]:
    """All induced embeddings of h into g in lexicographic order of the map.

    ``cap`` keeps only the first ``cap`` of that order.
    """
    if h.order > g.order or h.size > g.size:
        return []
    if h.order == 0:
        return [Embedding(h, g, ())][:cap]
    matcher = isomorphism.GraphMatcher(g.nx_graph, h.nx_graph)
    maps = []
    for core in matcher.subgraph_isomorphisms_iter():
        inverse = {hv: gv for gv, hv in core.items()}
        maps.append(tuple(inverse[v] for v in range(h.order)))
    maps.sort()
    if cap is not None:
        maps = maps[:cap]
    return [Embedding(h, g, m) for m in maps]


@lru_cache(maxsize=200_000)
def embeds(h: Graph, g: Graph) -> bool:
    if h.order > g.order or h.size > g.size:
        return False
    non_edges_h = h.order * (h.order - 1) // 2 - h.size
    non_edges_g = g.order * (g.order - 1) // 2 - g.size
    if non_edges_h > non_edges_g:
        return False
    if h.order == 0:
        return True
    return isomorphism.GraphMatcher(g.nx_graph, h.nx_graph).subgraph_is_isomorphic()


@lru_cache(maxsize=100_000)
def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.order != h.order or g.size != h.size:
        return False
    return nx.is_isomorphic(g.nx_graph, h.nx_graph)


def disjoint_union(g: Graph, h: Graph) -> tuple[Graph, Embedding, Embedding]:
    shift = g.order
    union = Graph(g.order + h.order, g.edges | {(u + shift, v + shift) for u, v in h.edges})
    return (
        union,
        Embedding(g, union, tuple(range(g.order))),
        Embedding(h, union, tuple(range(shift, shift + h.order))),
    )


def amalgam_disjoint_over(m0: Iterable[int], m1: Graph, m2: Graph) -> tuple[Graph, Embedding, Embedding]:
    """Pushout of m1 and m2 identifying the shared vertex identifiers ``m0`` and nothing else.

    m1 keeps its identifiers; the vertices of m2 outside m0 are appended in order.
    """
    base = m1.check_vertices(m0)
    m2.check_vertices(base)
    for u, v in itertools.combinations(sorted(base), 2):
        if m1.has_edge(u, v) != m2.has_edge(u, v):
            raise GraphInputError(f"m0 is not an induced common subgraph: pair ({u},{v}) differs")
    mapping = {v: v for v in base}
    next_id = m1.order
    for v in m2.vertices:
        if v not in base:
            mapping[v] = next_id
            next_id += 1
    edges = set(m1.edges) | {(mapping[u], mapping[v]) for u, v in m2.edges}
    amalgam = Graph(next_id, frozenset(edges))
    f1 = Embedding(m1, amalgam, tuple(range(m1.order)))
    f2 = Embedding(m2, amalgam, tuple(mapping[v] for v in m2.vertices))
    return amalgam, f1, f2


def enumerate_cliques(g: Graph, max_size: int) -> list[VertexSet]:
    """Vertex sets of size 1..max_size inducing complete subgraphs, by (size, members)"""
    if max_size <= 0:
        return []
    found = []
    for clique in nx.enumerate_all_cliques(g.nx_graph):
        if len(clique) > max_size:
            break
        found.append(frozenset(clique))
    return sorted(found, key=lambda c: (len(c), sorted(c)))


@lru_cache(maxsize=None)
def clique_number(g: Graph) -> int:
    if g.order == 0:
        return 0
    return max(len(c) for c in nx.find_cliques(g.nx_graph))


@lru_cache(maxsize=100_000)
def common_count(g: Graph, m: Graph) -> int:
    """Largest k such that a k-vertex induced subgraph of g induced-embeds into m.

    Searched as subgraphs of g into m. The value is the size of a largest common
    induced subgraph, so it does not depend on the argument order.
    """
    for k in range(min(g.order, m.order), 0, -1):
        for subset in itertools.combinations(range(g.order), k):
            if embeds(induced(g, subset), m):
                return k
    return 0


def relabel(g: Graph, permutation: Sequence[int]) -> Graph:
    """Rename vertex v to ``permutation[v]``"""
    if sorted(permutation) != list(range(g.order)):
        raise GraphInputError(f"{list(permutation)} is not a permutation of {g.order} vertices")
    return Graph(g.order, frozenset((permutation[u], permutation[v]) for u, v in g.edges))


def format_graph(name: str, g: Graph) -> str:
    edges = ", ".join(f"({u},{v})" for u, v in g.sorted_edges)
    if edges:
        return f"graph {name} {{ vertices: {g.order}; edges: {edges}; }}"
    return f"graph {name} {{ vertices: {g.order}; edges:; }}"


def parse_graph(text: str) -> tuple[str, Graph]:
    """Parse a single ``graph NAME { ... }`` definition"""
    # deferred: class_spec imports this module
    from .class_spec.spec_parser import parse_spec

    spec = parse_spec(text)
    if len(spec.graphs) != 1 or spec.classes or spec.relations or spec.checks:
        raise GraphInputError("expected exactly one graph definition")
    definition = spec.graphs[0]
    return definition.name, definition.to_graph()
