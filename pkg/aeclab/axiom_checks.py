"""Finite checks of the AEC axioms and of the propositions about particular relations.

Finite chains contain their union, so chain-union and smoothness cannot fail on
them; the limit stand-ins below exhibit the finite shadow of a limit failure
instead: every proper part relates, the whole does not.
"""
import itertools
import logging
from typing import Iterable, Optional, Sequence

from .certificates import SpecWriter, graph_payload, sorted_set
from .class_spec.class_membership import ClassSpec, member
from .config import DEFAULT_EXTRA_VERTICES
from .constructions import canonical_form, gen_edgeless
from .errors import PreconditionError
from .graph_core import Graph, VertexSet, embeds, induced, induced_subgraph
from .models import Certificate, CertificateKind, Exhaustion
from .relations import SubmodelRelation, adds_element, qf_type_of, rel_holds

logger = logging.getLogger(__name__)

FINITE_CHAIN_NOTE = (
    "finite chains contain their union, so this axiom cannot fail on them; limit failures are "
    "shown by the limit stand-in checks"
)
LIMIT_STANDIN_NOTE = (
    "finite stand-in for a limit-stage failure: every proper part relates, the whole does not"
)


def rel_between(rel: SubmodelRelation, inner: Iterable[int], outer: Iterable[int], host: Graph) -> bool:
    """rel(host[inner], host[outer]) with inner a subset of outer"""
    sub, renumber = induced_subgraph(host, outer)
    return rel_holds(rel, (renumber[v] for v in inner), sub)


def _nested(sets: Sequence[VertexSet]) -> bool:
    return all(a <= b for a, b in zip(sets, sets[1:]))


def _writer(host: Graph, rel: SubmodelRelation, class_spec: Optional[ClassSpec] = None) -> SpecWriter:
    writer = SpecWriter()
    writer.graph(host, "host")
    if class_spec is not None:
        writer.class_spec(class_spec)
    writer.relation(rel)
    return writer


def _sets(host: Graph, sets: Iterable[Iterable[int]]) -> list[VertexSet]:
    return [host.check_vertices(s) for s in sets]


def check_transitivity(rel: SubmodelRelation, host: Graph, triple: Sequence[Iterable[int]]) -> Certificate:
    m0, m1, m2 = _sets(host, triple)
    if not _nested([m0, m1, m2]):
        raise PreconditionError("transitivity needs M0 <= M1 <= M2")
    premise = rel_between(rel, m0, m1, host) and rel_between(rel, m1, m2, host)
    holds = not premise or rel_between(rel, m0, m2, host)
    params = {"sets": [sorted_set(s) for s in (m0, m1, m2)]}
    kind = CertificateKind.PASS if holds else CertificateKind.WITNESS
    witness = None if holds else {"triple": params["sets"]}
    notes = [] if premise else ["premise fails, pass is vacuous"]
    return _writer(host, rel).certificate("check_transitivity", kind, params, witness=witness, notes=notes)


def check_coherence(
    rel: SubmodelRelation, host: Graph, triple: Sequence[Iterable[int]], mode: str = "standard"
) -> Certificate:
    """standard: M0 <= M2 and M1 <= M2 give M0 <= M1; strong drops M1 <= M2"""
    if mode not in ("standard", "strong"):
        raise PreconditionError(f"coherence mode must be standard or strong, got {mode}")
    m0, m1, m2 = _sets(host, triple)
    if not _nested([m0, m1, m2]):
        raise PreconditionError("coherence needs M0 <= M1 <= M2")
    premise = rel_between(rel, m0, m2, host)
    if mode == "standard":
        premise = premise and rel_between(rel, m1, m2, host)
    holds = not premise or rel_between(rel, m0, m1, host)
    params = {"sets": [sorted_set(s) for s in (m0, m1, m2)], "mode": mode}
    kind = CertificateKind.PASS if holds else CertificateKind.WITNESS
    witness = None if holds else {"triple": params["sets"]}
    return _writer(host, rel).certificate("check_coherence", kind, params, witness=witness)


def check_chain_union(
    rel: SubmodelRelation, class_spec: ClassSpec, host: Graph, chain: Sequence[Iterable[int]]
) -> Certificate:
    sets = _sets(host, chain)
    if not sets or not _nested(sets):
        raise PreconditionError("chain must be a non-empty increasing sequence")
    for inner, outer in zip(sets, sets[1:]):
        if not rel_between(rel, inner, outer, host):
            raise PreconditionError(f"chain step {sorted_set(inner)} -> {sorted_set(outer)} is not strong")
    union = frozenset().union(*sets)
    holds = member(induced(host, union), class_spec) and rel_between(rel, sets[0], union, host)
    params = {"chain": [sorted_set(s) for s in sets]}
    kind = CertificateKind.PASS if holds else CertificateKind.WITNESS
    witness = None if holds else {"chain": params["chain"], "union": sorted_set(union)}
    return _writer(host, rel, class_spec).certificate(
        "check_chain_union", kind, params, witness=witness, notes=[FINITE_CHAIN_NOTE]
    )


def check_smoothness(
    rel: SubmodelRelation, host: Graph, chain: Sequence[Iterable[int]], target: Iterable[int]
) -> Certificate:
    sets = _sets(host, chain)
    n = host.check_vertices(target)
    if not sets or not _nested(sets) or not sets[-1] <= n:
        raise PreconditionError("smoothness needs an increasing chain inside the target")
    for s in sets:
        if not rel_between(rel, s, n, host):
            raise PreconditionError(f"chain member {sorted_set(s)} is not strong in the target")
    union = frozenset().union(*sets)
    holds = rel_between(rel, union, n, host)
    params = {"chain": [sorted_set(s) for s in sets], "target": sorted_set(n)}
    kind = CertificateKind.PASS if holds else CertificateKind.WITNESS
    witness = None if holds else {"union": sorted_set(union)}
    return _writer(host, rel).certificate(
        "check_smoothness", kind, params, witness=witness, notes=[FINITE_CHAIN_NOTE]
    )


def limit_standin_smoothness(g: Graph, kappa: int) -> Certificate:
    """M edgeless on kappa vertices, N = M plus one isolated vertex b, relation NoAdd{g, kappa}"""
    if kappa < 1 or g.order < kappa + 1:
        raise PreconditionError(f"need kappa >= 1 and |g| >= kappa + 1, got kappa={kappa}, |g|={g.order}")
    rel = SubmodelRelation.noadd(g, kappa)
    n = gen_edgeless(kappa + 1)
    m = frozenset(range(kappa))
    proper = [frozenset(s) for k in range(kappa) for s in itertools.combinations(sorted(m), k)]
    failing = [sorted_set(s) for s in proper if not rel_holds(rel, s, n)]
    added = adds_element(m, n, g, kappa)

    writer = SpecWriter()
    writer.graph(g, "g")
    writer.graph(n, "N")
    writer.relation(rel)
    params = {"kappa": kappa}
    if not failing and added is not None:
        witness = {
            "M": sorted_set(m),
            "proper_subsets_checked": len(proper),
            "A": sorted_set(added.a),
            "x": added.x,
            "embedding": list(added.embedding.mapping),
        }
        return writer.certificate("limit_standin_smoothness", CertificateKind.WITNESS, params,
                                  witness=witness, notes=[LIMIT_STANDIN_NOTE], nodes=len(proper) + 1)
    notes = [f"proper subsets failing: {failing}"] if failing else ["M itself relates to N"]
    return writer.certificate("limit_standin_smoothness", CertificateKind.PASS, params,
                              notes=notes, nodes=len(proper) + 1)


def limit_standin_forb_bounded(g: Graph, lam: int) -> Certificate:
    """Prefixes of the first lam vertices of g against N = the first lam+1 vertices"""
    if not 1 <= lam <= g.order - 2:
        raise PreconditionError(f"need 1 <= lam <= |g| - 2, got lam={lam}, |g|={g.order}")
    rel = SubmodelRelation.forb_bounded(g, lam)
    n = induced(g, range(lam + 1))
    prefixes = [frozenset(range(k)) for k in range(lam)]
    failing = [sorted_set(p) for p in prefixes if not rel_holds(rel, p, n)]
    whole = frozenset(range(lam))
    whole_relates = rel_holds(rel, whole, n)

    writer = SpecWriter()
    writer.graph(g, "g")
    writer.graph(n, "N")
    writer.relation(rel)
    params = {"lam": lam}
    if not failing and not whole_relates:
        witness = {"G_minus": sorted_set(whole), "prefixes_checked": len(prefixes), "extension": lam}
        return writer.certificate("limit_standin_forb_bounded", CertificateKind.WITNESS, params,
                                  witness=witness, notes=[LIMIT_STANDIN_NOTE], nodes=len(prefixes) + 1)
    notes = [f"prefixes failing: {failing}"] if failing else ["the lam-prefix relates to N"]
    return writer.certificate("limit_standin_forb_bounded", CertificateKind.PASS, params,
                              notes=notes, nodes=len(prefixes) + 1)


HOMOGENEOUS_NOTE = (
    "the conclusion is tested as complete or edgeless; edgeless graphs satisfy the hypothesis "
    "and still have vertices"
)


def _separating(g: Graph, n: int) -> Optional[tuple[tuple[int, ...], int, int]]:
    for a in itertools.combinations(g.vertices, n):
        outside = [x for x in g.vertices if x not in a]
        for x, y in itertools.combinations(outside, 2):
            if qf_type_of(x, a, g).pattern != qf_type_of(y, a, g).pattern:
                return a, x, y
    return None


def check_remark_homogeneous(g: Graph, n: int) -> Certificate:
    """Homogeneity over every n-set forces g complete or edgeless"""
    if not 1 <= n <= g.order - 2:
        raise PreconditionError(f"need 1 <= n <= |g| - 2, got n={n}, |g|={g.order}")
    separating = _separating(g, n)
    complete = 2 * g.size == g.order * (g.order - 1)
    edgeless = g.size == 0
    writer = SpecWriter()
    writer.graph(g, "g")
    params = {"n": n}
    if separating is None and not (complete or edgeless):
        return writer.certificate("check_remark_homogeneous", CertificateKind.WITNESS, params,
                                  witness={"hypothesis": True, "graph": graph_payload(g)},
                                  notes=[HOMOGENEOUS_NOTE])
    witness = {"hypothesis": separating is None, "complete": complete, "edgeless": edgeless}
    if separating is not None:
        a, x, y = separating
        witness["separating"] = {"A": list(a), "x": x, "y": y}
    return writer.certificate("check_remark_homogeneous", CertificateKind.PASS, params,
                              witness=witness, notes=[HOMOGENEOUS_NOTE])


def _distinct_induced(g: Graph, n: int) -> list[Graph]:
    seen: dict[Graph, None] = {}
    for k in range(1, min(n, g.order) + 1):
        for s in itertools.combinations(g.vertices, k):
            seen.setdefault(canonical_form(induced(g, s)), None)
    return list(seen)


def _join(g1: Graph, g2: Graph, g: Graph) -> tuple[Optional[list], int]:
    """First cross pattern making every one-vertex extension across the parts non-embeddable in g"""
    shift = g1.order
    v1, v2 = list(range(shift)), list(range(shift, shift + g2.order))
    base = g1.edges | {(u + shift, v + shift) for u, v in g2.edges}
    pairs = [(u, v) for u in v1 for v in v2]
    tried = 0
    for mask in range(1 << len(pairs)):
        tried += 1
        cross = {pairs[i] for i in range(len(pairs)) if mask >> i & 1}
        g3 = Graph(shift + g2.order, base | cross)
        if all(not embeds(induced(g3, v2 + [v]), g) for v in v1) and all(
            not embeds(induced(g3, v1 + [v]), g) for v in v2
        ):
            return sorted([list(p) for p in cross]), tried
    return None, tried


def check_joinability(g: Graph, n: int) -> Certificate:
    """Every pair of induced subgraphs with at most n vertices joins so that neither side extends into g"""
    if n < 1:
        raise PreconditionError(f"joinability needs n >= 1, got {n}")
    parts = _distinct_induced(g, n)
    writer = SpecWriter()
    writer.graph(g, "g")
    params = {"n": n}
    joins, explored = [], 0
    for g1, g2 in itertools.product(parts, repeat=2):
        cross, tried = _join(g1, g2, g)
        explored += tried
        if cross is None:
            witness = {"G1": graph_payload(g1), "G2": graph_payload(g2)}
            return writer.certificate(
                "check_joinability", CertificateKind.WITNESS, params, witness=witness,
                exhaustion=Exhaustion(bound=g1.order + g2.order, explored=tried), nodes=explored,
            )
        joins.append({"G1": graph_payload(g1), "G2": graph_payload(g2), "cross": cross})
    return writer.certificate("check_joinability", CertificateKind.PASS, params,
                              witness={"joins": joins}, nodes=explored)


def check_universal(class_spec: ClassSpec, m: Graph) -> Certificate:
    """Closure of the class under the induced subgraphs of m"""
    writer = SpecWriter()
    writer.graph(m, "m")
    writer.class_spec(class_spec)
    if not member(m, class_spec):
        return writer.certificate("check_universal", CertificateKind.PASS,
                                  notes=["m is not a member, closure holds vacuously"])
    checked = 0
    for k in range(m.order + 1):
        for s in itertools.combinations(m.vertices, k):
            checked += 1
            if not member(induced(m, s), class_spec):
                return writer.certificate("check_universal", CertificateKind.WITNESS,
                                          witness={"subset": list(s)}, nodes=checked)
    return writer.certificate("check_universal", CertificateKind.PASS, nodes=checked)


def _extensions(m: Graph, added: int) -> Iterable[Graph]:
    """m plus ``added`` vertices, each new vertex's neighbourhood among earlier ones as an ascending mask"""
    if added == 0:
        yield m
        return
    for smaller in _extensions(m, added - 1):
        v = smaller.order
        for mask in range(1 << v):
            yield Graph(v + 1, smaller.edges | {(u, v) for u in range(v) if mask >> u & 1})


def check_no_maximal(
    class_spec: ClassSpec, rel: SubmodelRelation, m: Graph, max_extra: int = DEFAULT_EXTRA_VERTICES
) -> Certificate:
    """A proper strong extension of m inside the class; the isolated vertex is tried first"""
    if not member(m, class_spec):
        raise PreconditionError("m is not a member of the class")
    writer = SpecWriter()
    writer.graph(m, "m")
    writer.class_spec(class_spec)
    writer.relation(rel)
    params = {"extra": max_extra}
    explored = 0
    for added in range(1, max_extra + 1):
        for candidate in _extensions(m, added):
            explored += 1
            if member(candidate, class_spec) and rel_holds(rel, m.vertices, candidate):
                return writer.certificate("check_no_maximal", CertificateKind.WITNESS, params,
                                          witness={"extension": graph_payload(candidate)}, nodes=explored)
    return writer.certificate(
        "check_no_maximal", CertificateKind.BOUNDED_REFUTATION, params,
        exhaustion=Exhaustion(bound=m.order + max_extra, explored=explored), nodes=explored,
    )
