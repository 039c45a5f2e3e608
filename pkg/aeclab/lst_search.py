"""Minimal strong submodels containing a given set, found level by level over its supersets."""
import itertools
import logging
from typing import Iterable, Optional

from .certificates import SpecWriter, sorted_set
from .class_spec.class_membership import ClassSpec, member
from .errors import PreconditionError
from .graph_core import Graph, VertexSet, induced
from .models import Certificate, CertificateKind, Exhaustion
from .relations import SubmodelRelation, rel_holds

logger = logging.getLogger(__name__)


def minimal_strong_submodels(
    n: Graph, a: Iterable[int], rel: SubmodelRelation, class_spec: ClassSpec
) -> list[VertexSet]:
    """Inclusion-minimal m containing a with n[m] in the class and m strong in n.

    Supersets are visited by size, then lexicographically; supersets of a set
    already found are skipped, which leaves an antichain.
    """
    return _search(n, a, rel, class_spec)[0]


def _search(
    n: Graph, a: Iterable[int], rel: SubmodelRelation, class_spec: ClassSpec
) -> tuple[list[VertexSet], int, int]:
    base = n.check_vertices(a)
    if not member(n, class_spec):
        raise PreconditionError("n is not a member of the class")
    rest = [v for v in n.vertices if v not in base]
    found: list[VertexSet] = []
    explored = skipped = 0
    for size in range(len(rest) + 1):
        for added in itertools.combinations(rest, size):
            m = base | frozenset(added)
            if any(f <= m for f in found):
                skipped += 1
                continue
            explored += 1
            if member(induced(n, m), class_spec) and rel_holds(rel, m, n):
                found.append(m)
    logger.debug(f"minimal_strong_submodels: {len(found)} minimal sets, {explored} tested, {skipped} skipped")
    return found, explored, skipped


def closure_certificate(
    n: Graph,
    a: Iterable[int],
    rel: SubmodelRelation,
    class_spec: ClassSpec,
    command: str = "minimal_strong_submodels",
    params: Optional[dict] = None,
) -> Certificate:
    """Witness when the whole of n is the only minimal strong submodel containing a"""
    base = n.check_vertices(a)
    found, explored, skipped = _search(n, base, rel, class_spec)
    writer = SpecWriter()
    writer.graph(n, "N")
    writer.class_spec(class_spec)
    writer.relation(rel)
    params = {**(params or {}), "A": sorted_set(base)}
    witness = {"minimal": [sorted_set(m) for m in found]}
    whole = frozenset(n.vertices)
    kind = CertificateKind.WITNESS if found == [whole] else CertificateKind.BOUNDED_REFUTATION
    return writer.certificate(
        command, kind, params, witness=witness,
        exhaustion=Exhaustion(bound=n.order, explored=explored, pruned=skipped),
        notes=[f"closure of {len(base)} vertices has {max((len(m) for m in found), default=0)} vertices"],
        nodes=explored,
    )
