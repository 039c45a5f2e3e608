"""Strong-submodel relations on graphs.

Every predicate takes ``m``, a vertex set of the host graph ``n``; the smaller
model M is the induced subgraph ``n[m]``.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Optional

from .errors import GraphInputError
from .graph_core import (
    Embedding,
    Graph,
    VertexSet,
    clique_number,
    common_count,
    components,
    embeds,
    enumerate_cliques,
    enumerate_induced_embeddings,
    induced,
    induced_subgraph,
)

logger = logging.getLogger(__name__)


class RelationKind(Enum):
    COMPONENT = "component"
    COMPONENT_STRICT = "component_strict"
    INDUCED = "induced"
    FORB_BOUNDED = "forb_bounded"
    COUNT = "count"
    NOADD = "noadd"
    TYPE_BOUNDED = "typeb"
    FC_CLIQUE = "fc_clique"
    FC_COMPONENT = "fc_comp"


# kinds carrying a forbidden graph, and those carrying a natural parameter
GRAPH_KINDS = {
    RelationKind.FORB_BOUNDED, RelationKind.COUNT, RelationKind.NOADD,
    RelationKind.TYPE_BOUNDED, RelationKind.FC_CLIQUE, RelationKind.FC_COMPONENT,
}
PARAM_KINDS = {RelationKind.FORB_BOUNDED, RelationKind.NOADD, RelationKind.TYPE_BOUNDED}


@dataclass(frozen=True)
class SubmodelRelation:
    kind: RelationKind
    forbidden: Optional[Graph] = None
    param: Optional[int] = None

    def __post_init__(self):
        if (self.kind in GRAPH_KINDS) != (self.forbidden is not None):
            raise GraphInputError(f"relation {self.kind.value} forbidden graph mismatch")
        if (self.kind in PARAM_KINDS) != (self.param is not None):
            raise GraphInputError(f"relation {self.kind.value} parameter mismatch")
        if self.param is not None and self.param < 0:
            raise GraphInputError(f"relation {self.kind.value} parameter must be >= 0")

    def with_strict_attach(self, strict: bool) -> "SubmodelRelation":
        if strict and self.kind == RelationKind.COMPONENT:
            return SubmodelRelation(RelationKind.COMPONENT_STRICT)
        return self

    @classmethod
    def component(cls, strict: bool = False) -> "SubmodelRelation":
        return cls(RelationKind.COMPONENT_STRICT if strict else RelationKind.COMPONENT)

    @classmethod
    def induced_sub(cls) -> "SubmodelRelation":
        return cls(RelationKind.INDUCED)

    @classmethod
    def forb_bounded(cls, forbidden: Graph, threshold: int) -> "SubmodelRelation":
        return cls(RelationKind.FORB_BOUNDED, forbidden, threshold)

    @classmethod
    def count(cls, forbidden: Graph) -> "SubmodelRelation":
        return cls(RelationKind.COUNT, forbidden)

    @classmethod
    def noadd(cls, forbidden: Graph, size: int) -> "SubmodelRelation":
        return cls(RelationKind.NOADD, forbidden, size)

    @classmethod
    def type_bounded(cls, forbidden: Graph, size: int) -> "SubmodelRelation":
        return cls(RelationKind.TYPE_BOUNDED, forbidden, size)

    @classmethod
    def fc_clique(cls, forbidden: Graph) -> "SubmodelRelation":
        return cls(RelationKind.FC_CLIQUE, forbidden)

    @classmethod
    def fc_component(cls, forbidden: Graph) -> "SubmodelRelation":
        return cls(RelationKind.FC_COMPONENT, forbidden)


@dataclass(frozen=True)
class QfType:
    """Adjacency pattern of a vertex over the base set, base in increasing order"""
    base: tuple[int, ...]
    pattern: tuple[int, ...]


@dataclass(frozen=True)
class AddWitness:
    a: VertexSet
    x: int
    embedding: Embedding


def rel_holds(rel: SubmodelRelation, m: Iterable[int], n: Graph) -> bool:
    members = n.check_vertices(m)
    if rel.kind == RelationKind.COMPONENT:
        return rel_component(members, n)
    elif rel.kind == RelationKind.COMPONENT_STRICT:
        return rel_component(members, n, strict_attach=True)
    elif rel.kind == RelationKind.INDUCED:
        return True
    elif rel.kind == RelationKind.FORB_BOUNDED:
        return rel_forb_bounded(members, n, rel.forbidden, rel.param)
    elif rel.kind == RelationKind.COUNT:
        return rel_count(members, n, rel.forbidden)
    elif rel.kind == RelationKind.NOADD:
        return rel_noadd(members, n, rel.forbidden, rel.param)
    elif rel.kind == RelationKind.TYPE_BOUNDED:
        return rel_type_bounded(members, n, rel.forbidden, rel.param)
    elif rel.kind == RelationKind.FC_CLIQUE:
        return rel_forbcon_clique(members, n, rel.forbidden)
    elif rel.kind == RelationKind.FC_COMPONENT:
        return rel_forbcon_component(members, n, rel.forbidden)
    else:
        raise ValueError(f"Unknown relation kind: {rel.kind}")


def _m_components(m: VertexSet, n: Graph) -> list[VertexSet]:
    sub, renumber = induced_subgraph(n, m)
    back = {new: old for old, new in renumber.items()}
    return [frozenset(back[v] for v in block) for block in components(sub).blocks]


def rel_component(m: VertexSet, n: Graph, strict_attach: bool = False) -> bool:
    """No n-component may join two distinct components of M.

    With ``strict_attach`` every n-component holding a vertex outside m must
    also hold a vertex of m.
    """
    m_block = {}
    for i, block in enumerate(_m_components(m, n)):
        for v in block:
            m_block[v] = i
    for block in components(n).blocks:
        touched = {m_block[v] for v in block if v in m_block}
        if len(touched) > 1:
            return False
        if strict_attach and not touched:
            return False
    return True


def rel_forb_bounded(m: VertexSet, n: Graph, g: Graph, threshold: int) -> bool:
    """No embedding of an induced H of g with |H| >= threshold into M extends into n.

    Only one-vertex extensions onto n minus m are tried: any strict extension
    restricts to one, and images falling inside m enlarge H instead.
    """
    outside = [x for x in n.vertices if x not in m]
    if not outside:
        return True
    sub, renumber = induced_subgraph(n, m)
    back = sorted(m)
    for k in range(threshold, min(g.order - 1, sub.order) + 1):
        for s in itertools.combinations(range(g.order), k):
            rest = [v for v in g.vertices if v not in s]
            for h in enumerate_induced_embeddings(induced(g, s), sub):
                images = [back[i] for i in h.mapping]
                for v in rest:
                    pattern = [g.has_edge(u, v) for u in s]
                    for x in outside:
                        if all(n.has_edge(y, x) == bit for y, bit in zip(images, pattern)):
                            logger.debug(f"forb_bounded: {s}+{v} extends into {x}")
                            return False
    return True


def rel_count(m: VertexSet, n: Graph, g: Graph) -> bool:
    return common_count(g, induced(n, m)) == common_count(g, n)


def adds_element(m: VertexSet, n: Graph, g: Graph, size: int) -> Optional[AddWitness]:
    """First (A, x) in canonical order with A in m, |A| = size, x outside m, n[A+x] embedding in g"""
    outside = [x for x in n.vertices if x not in m]
    for a in itertools.combinations(sorted(m), size):
        for x in outside:
            sub = induced(n, a + (x,))
            if embeds(sub, g):
                embedding = enumerate_induced_embeddings(sub, g, cap=1)[0]
                return AddWitness(frozenset(a), x, embedding)
    return None


def rel_noadd(m: VertexSet, n: Graph, g: Graph, size: int) -> bool:
    return adds_element(m, n, g, size) is None


def qf_type_of(x: int, a: Iterable[int], n: Graph) -> QfType:
    base = tuple(sorted(n.check_vertices(a)))
    n.check_vertices([x])
    if x in base:
        raise GraphInputError(f"vertex {x} lies in the type's base {list(base)}")
    return QfType(base, tuple(int(n.has_edge(x, y)) for y in base))


def type_graph(qf_type: QfType, n: Graph) -> Graph:
    """The base of the type as induced in n, plus one new last vertex with the pattern"""
    base_graph = induced(n, qf_type.base)
    last = base_graph.order
    extra = {(i, last) for i, bit in enumerate(qf_type.pattern) if bit}
    return Graph(last + 1, base_graph.edges | extra)


@lru_cache(maxsize=100_000)
def _realized(type_structure: Graph, g: Graph) -> bool:
    return embeds(type_structure, g)


def type_realized_in(qf_type: QfType, n: Graph, g: Graph) -> bool:
    """Realized in g: the base plus a realizer induced-embeds into g"""
    return _realized(type_graph(qf_type, n), g)


def rel_type_bounded(m: VertexSet, n: Graph, g: Graph, size: int) -> bool:
    outside = [x for x in n.vertices if x not in m]
    for a in itertools.combinations(sorted(m), size):
        for x in outside:
            if type_realized_in(qf_type_of(x, a, n), n, g):
                return False
    return True


def rel_forbcon_clique(m: VertexSet, n: Graph, g: Graph) -> bool:
    """Cliques of n that embed in g and meet m lie inside m"""
    for clique in enumerate_cliques(n, clique_number(g)):
        if clique & m and not clique <= m:
            return False
    return True


def rel_forbcon_component(m: VertexSet, n: Graph, g: Graph) -> bool:
    """Components of M that embed in g are components of n"""
    n_blocks = set(components(n).blocks)
    for block in _m_components(m, n):
        if block not in n_blocks and embeds(induced(n, block), g):
            return False
    return True


def relation_literal(rel: SubmodelRelation, graph_name: str = "G") -> str:
    """DSL literal for the relation, naming its forbidden graph ``graph_name``"""
    if rel.kind in PARAM_KINDS:
        return f"{rel.kind.value}({graph_name}, {rel.param})"
    if rel.kind in GRAPH_KINDS:
        return f"{rel.kind.value}({graph_name})"
    return rel.kind.value
