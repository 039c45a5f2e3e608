"""Exhaustive sweep of transitivity, coherence, chain-union and smoothness over small hosts."""
import asyncio
import itertools
import logging
from typing import Mapping, Optional

from .certificates import sorted_set
from .class_spec.class_membership import ClassSpec, member
from .class_spec.spec_data_classes import NameArg
from .class_spec.spec_parser import parse_class_literal, parse_relation_literal
from .class_spec.spec_resolver import free_graph_names, resolve_class, resolve_relation
from .config import AECLAB_THREADS, DEFAULT_CHAIN_LEN, DEFAULT_FORBIDDEN_MAX_SIZE, DEFAULT_MAX_SIZE
from .constructions import connected_graphs_upto, enumerate_graphs_upto
from .errors import SpecResolutionError
from .graph_core import Graph, VertexSet, format_graph, induced, induced_subgraph
from .models import CheckTally, SuiteReport
from .relations import SubmodelRelation, rel_holds

logger = logging.getLogger(__name__)

CHECKS = ("transitivity", "coherence", "strong_coherence", "chain_union", "smoothness")
FORB_CON_FORMS = ("fc_clique", "fc_comp")


def default_class_literal(relation_form: str, graph_name: Optional[str]) -> str:
    if graph_name is None:
        return "all"
    if relation_form in FORB_CON_FORMS:
        return f"forbcon({graph_name})"
    return f"forb({graph_name})"


class HostSweep:
    """All checks on one host graph for one relation and class"""

    def __init__(self, rel: SubmodelRelation, class_spec: ClassSpec, host: Graph, chain_len: int):
        self.rel = rel
        self.class_spec = class_spec
        self.host = host
        self.chain_len = chain_len
        self.subsets = [
            frozenset(s) for k in range(host.order + 1) for s in itertools.combinations(host.vertices, k)
        ]
        self.members = {s: member(induced(host, s), class_spec) for s in self.subsets}
        self.supersets = {s: [t for t in self.subsets if s < t and self.members[t]] for s in self.subsets}
        self._related: dict[tuple[VertexSet, VertexSet], bool] = {}
        self.tallies = {name: CheckTally() for name in CHECKS}

    def related(self, inner: VertexSet, outer: VertexSet) -> bool:
        key = (inner, outer)
        if key not in self._related:
            sub, renumber = induced_subgraph(self.host, outer)
            self._related[key] = rel_holds(self.rel, (renumber[v] for v in inner), sub)
        return self._related[key]

    def record(self, name: str, holds: bool, sets) -> None:
        tally = self.tallies[name]
        tally.checked += 1
        if not holds:
            tally.violations += 1
            if tally.first_violation is None:
                tally.first_violation = {"sets": [sorted_set(s) for s in sets]}

    def triples(self) -> None:
        # each vertex gets a level: 0 in M0, 1 in M1 only, 2 in M2 only, 3 outside
        for levels in itertools.product(range(4), repeat=self.host.order):
            m0, m1, m2 = (frozenset(v for v, lv in enumerate(levels) if lv <= k) for k in range(3))
            if not (self.members[m0] and self.members[m1] and self.members[m2]):
                continue
            r01, r12, r02 = self.related(m0, m1), self.related(m1, m2), self.related(m0, m2)
            self.record("transitivity", not (r01 and r12) or r02, (m0, m1, m2))
            self.record("coherence", not (r02 and r12) or r01, (m0, m1, m2))
            self.record("strong_coherence", not r02 or r01, (m0, m1, m2))

    def chains(self) -> None:
        def grow(chain: list[VertexSet]) -> None:
            self.record("chain_union", self.members[chain[-1]] and self.related(chain[0], chain[-1]), chain)
            for target in [chain[-1]] + self.supersets[chain[-1]]:
                if all(self.related(s, target) for s in chain):
                    self.record("smoothness", self.related(chain[-1], target), chain + [target])
            if len(chain) < self.chain_len:
                for t in self.supersets[chain[-1]]:
                    if self.related(chain[-1], t):
                        grow(chain + [t])

        for s in self.subsets:
            if self.members[s]:
                grow([s])

    def run(self) -> dict[str, CheckTally]:
        self.triples()
        self.chains()
        return self.tallies


def sweep_host(rel: SubmodelRelation, class_spec: ClassSpec, host: Graph, chain_len: int) -> dict[str, CheckTally]:
    return HostSweep(rel, class_spec, host, chain_len).run()


async def run_axiom_suite(
    rel_literal: str,
    class_literal: Optional[str] = None,
    max_size: int = DEFAULT_MAX_SIZE,
    chain_len: int = DEFAULT_CHAIN_LEN,
    forbidden_max_size: int = DEFAULT_FORBIDDEN_MAX_SIZE,
    env: Optional[Mapping[str, Graph]] = None,
    strict_attach: bool = False,
    threads: int = AECLAB_THREADS,
) -> SuiteReport:
    """Sweep every host with at most ``max_size`` vertices.

    A graph name in the relation literal that is neither in ``env`` nor a
    builtin is quantified over the connected graphs (Forb-con relations) or
    all graphs with at most ``forbidden_max_size`` vertices.

    Hosts run through ``asyncio.to_thread`` with at most ``threads`` in flight.
    The checks are pure Python and hold the GIL, so ``threads`` caps
    concurrency only; it gives no CPU parallelism.
    """
    env = dict(env or {})
    rel_call = parse_relation_literal(rel_literal)
    free = free_graph_names(rel_call, env)
    if len(free) > 1:
        raise SpecResolutionError(f"at most one free graph name is supported, got {free}")
    free_name = free[0] if free else None
    graph_name = free_name or next((a.name for a in rel_call.args if isinstance(a, NameArg)), None)
    class_text = class_literal or default_class_literal(rel_call.form, graph_name)
    class_call = parse_class_literal(class_text)

    if free_name is None:
        forbidden: list[Optional[Graph]] = [None]
    elif rel_call.form in FORB_CON_FORMS:
        forbidden = list(connected_graphs_upto(forbidden_max_size))
    else:
        forbidden = [g for g in enumerate_graphs_upto(forbidden_max_size) if g.order >= 1]
    hosts = list(enumerate_graphs_upto(max_size))

    semaphore = asyncio.Semaphore(max(1, threads))

    async def sweep(rel: SubmodelRelation, class_spec: ClassSpec, host: Graph) -> dict[str, CheckTally]:
        async with semaphore:
            return await asyncio.to_thread(sweep_host, rel, class_spec, host, chain_len)

    jobs = []
    for g in forbidden:
        bound_env = env if g is None else {**env, free_name: g}
        rel = resolve_relation(rel_call, bound_env, strict_attach)
        class_spec = resolve_class(class_call, bound_env)
        jobs.extend(sweep(rel, class_spec, host) for host in hosts)
    results = await asyncio.gather(*jobs)

    # gather keeps submission order, so the reduction is schedule-independent
    tallies = {name: CheckTally() for name in CHECKS}
    for index, result in enumerate(results):
        g = forbidden[index // len(hosts)]
        host = hosts[index % len(hosts)]
        for name, tally in result.items():
            total = tallies[name]
            total.checked += tally.checked
            total.violations += tally.violations
            if total.first_violation is None and tally.first_violation is not None:
                total.first_violation = {
                    **tally.first_violation,
                    "host": format_graph("H", host),
                    "forbidden": format_graph("G", g) if g is not None else None,
                }

    report = SuiteReport(
        relation=rel_literal,
        class_name=class_text,
        max_size=max_size,
        chain_len=chain_len,
        forbidden=[format_graph("G", g) for g in forbidden if g is not None],
        hosts=len(hosts),
        tallies=tallies,
    )
    logger.info(f"axiom suite {rel_literal}: {report.violations} violations over {len(results)} sweeps")
    return report
