"""Canonical-order search for amalgams and joint embeddings, with refutation certificates.

The candidate amalgam keeps m1 on vertices 0..|m1|-1 (f1 is the identity). The
vertices of m2 outside the base are either identified with vertices of m1
outside the base or appended after m1, followed by any extra vertices.
Candidates are visited by extra-vertex count, then identification (fewest
pairs first, then lexicographic), then the free adjacency of each appended
vertex as an ascending bitmask.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence

from .certificates import SpecWriter, graph_payload
from .class_spec.class_membership import ClassKind, ClassSpec, is_hereditary, member
from .config import DEFAULT_AMALGAM_BOUND, DEFAULT_EXTRA_VERTICES
from .errors import PreconditionError
from .graph_core import Edge, Embedding, Graph, components, disjoint_union, embeds
from .models import Certificate, CertificateKind, Exhaustion
from .relations import RelationKind, SubmodelRelation, rel_holds
from .scenarios import AP_FAILURE_SCENARIOS, ScenarioName, build_scenario

logger = logging.getLogger(__name__)

COMPONENT_KINDS = {RelationKind.COMPONENT, RelationKind.COMPONENT_STRICT}


@dataclass(frozen=True)
class Layout:
    """One identification plus extra-vertex count, with everything fixed by m1 and m2"""
    identification: tuple[tuple[int, int], ...]
    extras: int
    f2: tuple[int, ...]
    order: int
    fixed: tuple[frozenset[Edge], ...]  # fixed edges to earlier vertices, per appended vertex
    partners: tuple[tuple[int, ...], ...]  # free earlier vertices, per appended vertex


class AmalgamSearch:
    def __init__(
        self,
        class_spec: ClassSpec,
        rel: SubmodelRelation,
        m0: Graph,
        m1: Graph,
        m2: Graph,
        e1: Sequence[int],
        e2: Sequence[int],
        size_bound: int,
        disjoint: bool = False,
        max_extra: int = DEFAULT_EXTRA_VERTICES,
    ):
        self.class_spec = class_spec
        self.rel = rel
        self.m0, self.m1, self.m2 = m0, m1, m2
        self.e1, self.e2 = tuple(e1), tuple(e2)
        self.size_bound = size_bound
        self.disjoint = disjoint
        self.max_extra = max_extra
        self.base_to_m1 = {self.e2[v]: self.e1[v] for v in m0.vertices}
        self.r1 = [v for v in m1.vertices if v not in set(self.e1)]
        self.r2 = [w for w in m2.vertices if w not in set(self.e2)]
        self.hereditary = is_hereditary(class_spec)
        self.explored = 0
        self.pruned = 0
        self.nodes = 0

    def check_preconditions(self) -> None:
        for name, host, mapping in (("m1", self.m1, self.e1), ("m2", self.m2, self.e2)):
            if not Embedding(self.m0, host, mapping).is_valid():
                raise PreconditionError(f"m0 does not induced-embed into {name} via {list(mapping)}")
            if not rel_holds(self.rel, mapping, host):
                raise PreconditionError(f"m0 is not a strong submodel of {name}")
        for name, g in (("m0", self.m0), ("m1", self.m1), ("m2", self.m2)):
            if not member(g, self.class_spec):
                raise PreconditionError(f"{name} is not a member of the class")

    # Candidate space

    def identifications(self) -> Iterator[dict[int, int]]:
        limit = 0 if self.disjoint else min(len(self.r1), len(self.r2))
        for size in range(limit + 1):
            for sources in itertools.combinations(self.r2, size):
                for targets in itertools.permutations(self.r1, size):
                    sigma = dict(zip(sources, targets))
                    if self._consistent(sigma):
                        yield sigma

    def _consistent(self, sigma: dict[int, int]) -> bool:
        placed = {**self.base_to_m1, **sigma}
        for w, v in sigma.items():
            for w2, v2 in placed.items():
                if w2 != w and self.m2.has_edge(w, w2) != self.m1.has_edge(v, v2):
                    return False
        return True

    def layout(self, sigma: dict[int, int], extras: int) -> Layout:
        appended = [w for w in self.r2 if w not in sigma]
        f2 = {**self.base_to_m1, **sigma}
        for i, w in enumerate(appended):
            f2[w] = self.m1.order + i
        order = self.m1.order + len(appended) + extras
        free_m1 = tuple(v for v in self.r1 if v not in sigma.values())
        mapped = {(min(f2[u], f2[v]), max(f2[u], f2[v])) for u, v in self.m2.edges}
        fixed, partners = [], []
        for v in range(self.m1.order, order):
            fixed.append(frozenset(e for e in mapped if e[1] == v))
            partners.append(free_m1 if v < self.m1.order + len(appended) else tuple(range(v)))
        return Layout(
            tuple(sorted(sigma.items())), extras, tuple(f2[w] for w in self.m2.vertices),
            order, tuple(fixed), tuple(partners),
        )

    # Pruning

    @cached_property
    def component_of_m1(self) -> dict[int, int]:
        return components(self.m1).block_index

    @cached_property
    def component_of_m2(self) -> dict[int, int]:
        return components(self.m2).block_index

    @cached_property
    def forced_components(self) -> int:
        return max(len(components(self.m1)), len(components(self.m2)))

    @cached_property
    def refuted_at_root(self) -> bool:
        """Every forbidden family member already embeds into m1 or m2"""
        if self.class_spec.kind != ClassKind.NOT_ALL_EMBED:
            return False
        return all(embeds(h, self.m1) or embeds(h, self.m2) for h in self.class_spec.family)

    def _merges(self, prefix: Graph, labels: dict[int, int]) -> bool:
        for block in components(prefix).blocks:
            if len({labels[v] for v in block if v in labels}) > 1:
                return True
        return False

    def cut(self, prefix: Graph, layout: Layout) -> bool:
        if self.hereditary and not member(prefix, self.class_spec):
            return True
        if self.rel.kind in COMPONENT_KINDS:
            if self._merges(prefix, self.component_of_m1):
                return True
            image_labels = {
                x: self.component_of_m2[w] for w, x in enumerate(layout.f2) if x < prefix.order
            }
            if self._merges(prefix, image_labels):
                return True
            if self.class_spec.kind == ClassKind.COMP_COND:
                k, n = self.class_spec.numbers
                if self.forced_components >= k and any(len(b) > n for b in components(prefix).blocks):
                    return True
        return False

    # Search

    def _leaf(self, layout: Layout, edges: frozenset[Edge]) -> Optional[dict]:
        amalgam = Graph(layout.order, edges)
        if not member(amalgam, self.class_spec):
            return None
        if not rel_holds(self.rel, range(self.m1.order), amalgam):
            return None
        if not rel_holds(self.rel, layout.f2, amalgam):
            return None
        return {
            "amalgam": graph_payload(amalgam),
            "f1": list(range(self.m1.order)),
            "f2": list(layout.f2),
            "identified": [list(pair) for pair in layout.identification],
            "extra_vertices": layout.extras,
        }

    def _extend(self, layout: Layout, level: int, edges: frozenset[Edge]) -> Optional[dict]:
        self.nodes += 1
        if level == len(layout.fixed):
            self.explored += 1
            return self._leaf(layout, edges)
        v = self.m1.order + level
        partners = layout.partners[level]
        for mask in range(1 << len(partners)):
            chosen = {(u, v) for i, u in enumerate(partners) if mask >> i & 1}
            grown = edges | layout.fixed[level] | chosen
            if self.cut(Graph(v + 1, grown), layout):
                self.pruned += 1
                continue
            found = self._extend(layout, level + 1, grown)
            if found is not None:
                return found
        return None

    def run(self) -> Optional[dict]:
        for extras in range(self.max_extra + 1):
            for sigma in self.identifications():
                if self.m1.order + len(self.r2) - len(sigma) + extras > self.size_bound:
                    continue
                layout = self.layout(sigma, extras)
                if self.refuted_at_root or self.cut(self.m1, layout):
                    self.pruned += 1
                    continue
                found = self._extend(layout, 0, self.m1.edges)
                if found is not None:
                    return found
        return None


def _prefix(m0: Graph) -> tuple[int, ...]:
    return tuple(range(m0.order))


def search_amalgam(
    class_spec: ClassSpec,
    rel: SubmodelRelation,
    m0: Graph,
    m1: Graph,
    m2: Graph,
    e1: Optional[Sequence[int]] = None,
    e2: Optional[Sequence[int]] = None,
    size_bound: int = DEFAULT_AMALGAM_BOUND,
    disjoint: bool = False,
    max_extra: int = DEFAULT_EXTRA_VERTICES,
) -> Certificate:
    """Amalgam of m1 and m2 over m0 in the class with both images strong, or a bounded refutation.

    ``e1`` and ``e2`` map m0 into m1 and m2; both default to the prefix vertices.
    """
    e1 = tuple(e1) if e1 is not None else _prefix(m0)
    e2 = tuple(e2) if e2 is not None else _prefix(m0)
    search = AmalgamSearch(class_spec, rel, m0, m1, m2, e1, e2, size_bound, disjoint, max_extra)
    search.check_preconditions()
    witness = search.run()

    writer = SpecWriter()
    writer.graph(m0, "m0")
    writer.graph(m1, "m1")
    writer.graph(m2, "m2")
    writer.class_spec(class_spec)
    writer.relation(rel)
    params = {
        "e1": list(e1), "e2": list(e2), "bound": size_bound, "disjoint": disjoint, "extra": max_extra,
    }
    logger.info(
        f"search_amalgam: {'witness' if witness else 'refuted'} after {search.explored} leaves, "
        f"{search.pruned} cuts"
    )
    if witness is not None:
        return writer.certificate("search_amalgam", CertificateKind.WITNESS, params, witness=witness,
                                  nodes=search.nodes)
    notes = []
    if search.refuted_at_root:
        notes.append("every forbidden graph already embeds into m1 or m2, so no amalgam is a member")
    return writer.certificate(
        "search_amalgam", CertificateKind.BOUNDED_REFUTATION, params,
        exhaustion=Exhaustion(bound=size_bound, explored=search.explored, pruned=search.pruned),
        notes=notes, nodes=search.nodes,
    )


COMPMAX_COMPLETENESS = (
    "m1 and m2 are connected and share the base, so f1(m1) and f2(m2) lie in one component of "
    "any amalgam, which has at most n vertices in a member. Restricting an amalgam to that "
    "component keeps it in the class (hereditary), keeps f1 and f2 induced, and every embedding "
    "is strong under induced substructure. Hence an amalgam exists iff one with at most n "
    "vertices exists, and the search covered every candidate of that size."
)


def certify_ap_failure(name: str, params: Optional[dict] = None) -> Certificate:
    scenario = build_scenario(name, params)
    if scenario.name not in AP_FAILURE_SCENARIOS:
        raise PreconditionError(f"scenario '{name}' is not an amalgamation scenario")
    m0, m1, m2 = scenario.graphs["m0"], scenario.graphs["m1"], scenario.graphs["m2"]
    certificate = search_amalgam(
        scenario.class_spec, scenario.relation, m0, m1, m2,
        size_bound=scenario.bound, max_extra=scenario.extra,
    )
    update = {
        "command": "certify_ap_failure",
        "inputs": certificate.inputs.model_copy(update={
            "params": {**certificate.inputs.params, "scenario": name, "scenario_params": scenario.params},
        }),
    }
    if scenario.name == ScenarioName.COMPMAX and certificate.kind == CertificateKind.BOUNDED_REFUTATION:
        n = scenario.class_spec.numbers[0]
        covered = scenario.bound >= n and m1.order + scenario.extra >= n
        connected = len(components(m1)) == 1 and len(components(m2)) == 1 and m0.order > 0
        if covered and connected and scenario.relation.kind == RelationKind.INDUCED:
            update["kind"] = CertificateKind.COMPLETE_REFUTATION
            update["completeness_argument"] = COMPMAX_COMPLETENESS
    if scenario.relation.kind in COMPONENT_KINDS:
        update["notes"] = certificate.notes + [
            "refuted under the component relation; under induced substructure a hub vertex can "
            "merge components and amalgamate"
        ]
    return certificate.model_copy(update=update)


def jep_check(
    class_spec: ClassSpec,
    rel: SubmodelRelation,
    m: Graph,
    n: Graph,
    strategy: str = "disjoint",
    size_bound: int = DEFAULT_AMALGAM_BOUND,
    max_extra: int = DEFAULT_EXTRA_VERTICES,
) -> Certificate:
    """Joint embedding of m and n by disjoint union, the full join, or a bounded search"""
    for name, g in (("m", m), ("n", n)):
        if not member(g, class_spec):
            raise PreconditionError(f"{name} is not a member of the class")
    writer = SpecWriter()
    writer.graph(m, "m")
    writer.graph(n, "other")
    writer.class_spec(class_spec)
    writer.relation(rel)
    params = {"strategy": strategy, "bound": size_bound, "extra": max_extra}

    if strategy == "search":
        certificate = search_amalgam(class_spec, rel, Graph(0), m, n, (), (), size_bound, False, max_extra)
        return certificate.model_copy(update={
            "command": "jep_check",
            "inputs": writer.certificate("jep_check", certificate.kind, params).inputs,
        })
    if strategy not in ("disjoint", "join"):
        raise PreconditionError(f"unknown JEP strategy '{strategy}'")

    union, f1, f2 = disjoint_union(m, n)
    if strategy == "join":
        cross = {(u, v) for u in range(m.order) for v in range(m.order, union.order)}
        union = Graph(union.order, union.edges | cross)
    holds = (
        member(union, class_spec)
        and rel_holds(rel, f1.mapping, union)
        and rel_holds(rel, f2.mapping, union)
    )
    if holds:
        witness = {"amalgam": graph_payload(union), "f1": list(f1.mapping), "f2": list(f2.mapping)}
        return writer.certificate("jep_check", CertificateKind.WITNESS, params, witness=witness, nodes=1)
    return writer.certificate(
        "jep_check", CertificateKind.BOUNDED_REFUTATION, params,
        exhaustion=Exhaustion(bound=union.order, explored=1),
        notes=[f"the {strategy} construction fails; this refutes the strategy, not joint embedding"],
        nodes=1,
    )
