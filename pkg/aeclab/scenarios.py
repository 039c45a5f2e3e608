"""Built-in scenario bundles: the concrete graphs, sets, class and relation behind each experiment."""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

from .certificates import SpecWriter
from .class_spec.class_membership import ClassSpec
from .constructions import (
    gen_complete, gen_cycle, gen_edgeless, gen_example_N, gen_path,
)
from .errors import GraphInputError, UnknownScenarioError
from .graph_core import Graph, disjoint_union
from .models import CertificateKind, ScenarioManifest
from .relations import SubmodelRelation

logger = logging.getLogger(__name__)


class ScenarioName(Enum):
    COMPMAX = "compmax"
    COMPCOND = "compcond"
    NOTALLEMBED = "notallembed"
    NOTBOTH = "notboth"
    LST_GROWTH = "lst-growth"
    LIMIT_SMOOTHNESS = "limit-smoothness"
    COUNT_CHAIN = "count-chain"
    FORB_BOUNDED_SMOOTHNESS = "forb-bounded-smoothness"
    TYPE_BOUNDED_LST = "type-bounded-lst"
    FORB_CONNECTED_JEP = "forb-connected-jep"


AP_FAILURE_SCENARIOS = {
    ScenarioName.COMPMAX, ScenarioName.COMPCOND, ScenarioName.NOTALLEMBED, ScenarioName.NOTBOTH,
}

DEFAULT_PARAMS: dict[ScenarioName, dict[str, int]] = {
    ScenarioName.COMPMAX: {"n": 3, "bound": 7},
    ScenarioName.COMPCOND: {"k": 2, "n": 2, "bound": 9},
    ScenarioName.NOTALLEMBED: {"bound": 15},
    ScenarioName.NOTBOTH: {"bound": 8},
    ScenarioName.LST_GROWTH: {"mu": 8, "n": 2},
    ScenarioName.LIMIT_SMOOTHNESS: {"kappa": 3},
    ScenarioName.COUNT_CHAIN: {"size": 4},
    ScenarioName.FORB_BOUNDED_SMOOTHNESS: {"lam": 2},
    ScenarioName.TYPE_BOUNDED_LST: {"n": 2, "k": 3},
    ScenarioName.FORB_CONNECTED_JEP: {"size": 3},
}


@dataclass(frozen=True)
class Scenario:
    name: ScenarioName
    params: dict[str, int]
    expected_kind: CertificateKind
    description: str
    graphs: dict[str, Graph] = field(default_factory=dict)
    sets: dict[str, tuple[int, ...]] = field(default_factory=dict)
    class_spec: Optional[ClassSpec] = None
    relation: Optional[SubmodelRelation] = None
    bound: Optional[int] = None
    extra: Optional[int] = None
    # records a finite shadow of an argument; nothing is refuted or verified beyond it
    documentation_only: bool = False

    def manifest(self) -> ScenarioManifest:
        writer = SpecWriter()
        for role, g in self.graphs.items():
            writer.graph(g, role)
        if self.class_spec is not None:
            writer.class_spec(self.class_spec)
        if self.relation is not None:
            writer.relation(self.relation)
        return ScenarioManifest(
            name=self.name.value,
            params=dict(self.params),
            expected_kind=self.expected_kind,
            description=self.description,
            spec=writer.text(),
            roles=writer.roles,
            sets={k: list(v) for k, v in self.sets.items()},
            documentation_only=self.documentation_only,
        )


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise GraphInputError(message)


def _compmax(n: int, bound: int) -> Scenario:
    _require(n >= 3, f"compmax scenario needs n >= 3, got {n}")
    star = Graph(n, frozenset((0, i) for i in range(1, n)))
    return Scenario(
        ScenarioName.COMPMAX, {"n": n, "bound": bound}, CertificateKind.COMPLETE_REFUTATION,
        "m1 a clique and m2 a star sharing the vertex a; identifying the leaves forces an edge "
        "and a non-edge, any other overlap grows a's component past n",
        graphs={"m0": gen_complete(1), "m1": gen_complete(n), "m2": star},
        class_spec=ClassSpec.comp_max(n), relation=SubmodelRelation.induced_sub(),
        bound=bound, extra=max(0, bound - n),
    )


def _compcond(k: int, n: int, bound: int) -> Scenario:
    _require(k >= 2 and n >= 1, f"compcond scenario needs k >= 2 and n >= 1, got k={k}, n={n}")
    star = Graph(n + 1, frozenset((0, i) for i in range(1, n + 1)))
    m2 = gen_edgeless(k)
    base_size = star.order + m2.order - 1
    return Scenario(
        ScenarioName.COMPCOND, {"k": k, "n": n, "bound": bound}, CertificateKind.BOUNDED_REFUTATION,
        "m1 a star of n+1 vertices through a, m2 = a plus k-1 isolated vertices; under the "
        "component relation the amalgam keeps k components while a's component exceeds n",
        graphs={"m0": gen_complete(1), "m1": star, "m2": m2},
        class_spec=ClassSpec.comp_cond(k, n), relation=SubmodelRelation.component(),
        bound=bound, extra=max(0, bound - base_size),
    )


def _notallembed(bound: int) -> Scenario:
    k3, c5, c7 = gen_complete(3), gen_cycle(5), gen_cycle(7)
    return Scenario(
        ScenarioName.NOTALLEMBED, {"bound": bound}, CertificateKind.BOUNDED_REFUTATION,
        "K3+C5 and K3+C7 over the shared K3; every amalgam embeds all three graphs",
        graphs={"m0": k3, "m1": disjoint_union(k3, c5)[0], "m2": disjoint_union(k3, c7)[0]},
        class_spec=ClassSpec.not_all_embed(k3, c5, c7), relation=SubmodelRelation.induced_sub(),
        bound=bound, extra=max(0, bound - 15),
    )


def _notboth(bound: int) -> Scenario:
    return Scenario(
        ScenarioName.NOTBOTH, {"bound": bound}, CertificateKind.BOUNDED_REFUTATION,
        "over a single vertex a, m1 realizes adjacency to a and m2 non-adjacency; any amalgam "
        "realizes both over the shared copy",
        graphs={"m0": gen_complete(1), "m1": gen_complete(2), "m2": gen_edgeless(2)},
        class_spec=ClassSpec.not_both(gen_complete(1), (1,), (0,)),
        relation=SubmodelRelation.induced_sub(), bound=bound, extra=max(0, bound - 3),
    )


def _lst_growth(mu: int, n: int) -> Scenario:
    g = gen_edgeless(2 * n + 1)
    return Scenario(
        ScenarioName.LST_GROWTH, {"mu": mu, "n": n}, CertificateKind.WITNESS,
        "the only strong submodel containing the first n vertices is the whole graph",
        graphs={"N": gen_example_N(mu, n), "g": g},
        sets={"A": tuple(range(n))},
        class_spec=ClassSpec.forb(g), relation=SubmodelRelation.noadd(g, n),
    )


def _limit_smoothness(kappa: int) -> Scenario:
    _require(kappa >= 1, f"limit-smoothness needs kappa >= 1, got {kappa}")
    g = gen_edgeless(kappa + 2)
    return Scenario(
        ScenarioName.LIMIT_SMOOTHNESS, {"kappa": kappa}, CertificateKind.WITNESS,
        "every proper part of edgeless M relates to N = M plus one vertex, M itself does not",
        graphs={"g": g}, relation=SubmodelRelation.noadd(g, kappa),
    )


def _count_chain(size: int) -> Scenario:
    _require(size >= 1, f"count-chain needs size >= 1, got {size}")
    g = gen_edgeless(size + 1)
    return Scenario(
        ScenarioName.COUNT_CHAIN, {"size": size}, CertificateKind.PASS,
        "documentation only: edgeless initial segments of an edgeless host: counts grow by one per step, so no "
        "proper step is count-preserving and a finite chain is stationary",
        graphs={"host": gen_edgeless(size), "g": g},
        sets={"chain": tuple(range(size + 1))},
        relation=SubmodelRelation.count(g),
        documentation_only=True,
    )


def _forb_bounded_smoothness(lam: int) -> Scenario:
    _require(lam >= 1, f"forb-bounded-smoothness needs lam >= 1, got {lam}")
    g = gen_path(lam + 2)
    return Scenario(
        ScenarioName.FORB_BOUNDED_SMOOTHNESS, {"lam": lam}, CertificateKind.WITNESS,
        "proper prefixes of the first lam vertices of g relate to the first lam+1, "
        "the lam-prefix does not",
        graphs={"g": g}, relation=SubmodelRelation.forb_bounded(g, lam),
    )


def _type_bounded_lst(n: int, k: int) -> Scenario:
    _require(n >= 1 and k >= 1, f"type-bounded-lst needs n, k >= 1, got n={n}, k={k}")
    g = gen_edgeless(n + 2)
    host = disjoint_union(gen_edgeless(n), gen_complete(k))[0]
    return Scenario(
        ScenarioName.TYPE_BOUNDED_LST, {"n": n, "k": k}, CertificateKind.WITNESS,
        "A edgeless on n vertices plus a clique of k realizers of the all-zero type over A; "
        "the minimal closure of A is the whole graph",
        graphs={"N": host, "g": g}, sets={"A": tuple(range(n))},
        class_spec=ClassSpec.forb(g), relation=SubmodelRelation.type_bounded(g, n),
    )


def _forb_connected_jep(size: int) -> Scenario:
    _require(size >= 2, f"forb-connected-jep needs size >= 2, got {size}")
    g = gen_path(size)
    return Scenario(
        ScenarioName.FORB_CONNECTED_JEP, {"size": size}, CertificateKind.PASS,
        "Forb of a connected graph: the disjoint union jointly embeds every pair of members",
        graphs={"g": g},
        class_spec=ClassSpec.forb(g), relation=SubmodelRelation.induced_sub(),
    )


class ScenarioFactory:
    """Factory for the built-in scenarios"""

    @staticmethod
    def create_scenario(name: ScenarioName, **params: int) -> Scenario:
        values = {**DEFAULT_PARAMS[name], **params}
        if name == ScenarioName.COMPMAX:
            return _compmax(values["n"], values["bound"])
        elif name == ScenarioName.COMPCOND:
            return _compcond(values["k"], values["n"], values["bound"])
        elif name == ScenarioName.NOTALLEMBED:
            return _notallembed(values["bound"])
        elif name == ScenarioName.NOTBOTH:
            return _notboth(values["bound"])
        elif name == ScenarioName.LST_GROWTH:
            return _lst_growth(values["mu"], values["n"])
        elif name == ScenarioName.LIMIT_SMOOTHNESS:
            return _limit_smoothness(values["kappa"])
        elif name == ScenarioName.COUNT_CHAIN:
            return _count_chain(values["size"])
        elif name == ScenarioName.FORB_BOUNDED_SMOOTHNESS:
            return _forb_bounded_smoothness(values["lam"])
        elif name == ScenarioName.TYPE_BOUNDED_LST:
            return _type_bounded_lst(values["n"], values["k"])
        elif name == ScenarioName.FORB_CONNECTED_JEP:
            return _forb_connected_jep(values["size"])
        else:
            raise UnknownScenarioError(f"Unknown scenario: {name}")

    @staticmethod
    def get_available_scenarios() -> list[str]:
        """Get list of available scenario names"""
        return [name.value for name in ScenarioName]


def build_scenario(name: str, params: Optional[dict[str, Any]] = None) -> Scenario:
    try:
        scenario_name = ScenarioName(name)
    except ValueError:
        available = ", ".join(ScenarioFactory.get_available_scenarios())
        raise UnknownScenarioError(f"unknown scenario '{name}', expected one of {available}")
    known = DEFAULT_PARAMS[scenario_name]
    relevant = {k: int(v) for k, v in (params or {}).items() if k in known and v is not None}
    scenario = ScenarioFactory.create_scenario(scenario_name, **relevant)
    logger.debug(f"built scenario {name} with {scenario.params}")
    return scenario
