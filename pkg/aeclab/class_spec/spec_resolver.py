"""Binds the names of a parsed spec file to graphs, classes and relations."""
import logging
import re
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from ..constructions import gen_complete, gen_cycle, gen_edgeless, gen_path
from ..errors import AecLabError, SpecResolutionError
from ..graph_core import Graph
from ..relations import SubmodelRelation
from .class_membership import ClassSpec
from .spec_data_classes import (
    BitsArg, Call, CheckStmt, ExprArg, NameArg, NumberArg, SpecFile, expr_atoms,
)

logger = logging.getLogger(__name__)

BUILTIN_GRAPH = re.compile(r"([KEPC])(\d+)")


def builtin_graph(name: str) -> Optional[Graph]:
    """K<m> complete, E<m> edgeless, P<m> path, C<m> cycle (m >= 3)"""
    match = BUILTIN_GRAPH.fullmatch(name)
    if match is None:
        return None
    letter, m = match.group(1), int(match.group(2))
    if letter == "C" and m < 3:
        return None
    return {"K": gen_complete, "E": gen_edgeless, "P": gen_path, "C": gen_cycle}[letter](m)


@dataclass
class ResolvedSpec:
    graphs: dict[str, Graph] = field(default_factory=dict)
    classes: dict[str, ClassSpec] = field(default_factory=dict)
    relations: dict[str, SubmodelRelation] = field(default_factory=dict)
    checks: list[CheckStmt] = field(default_factory=list)
    source: Optional[SpecFile] = None

    def graph(self, name: str) -> Graph:
        found = self.graphs.get(name) or builtin_graph(name)
        if found is None:
            raise SpecResolutionError(f"unresolved graph name '{name}'")
        return found


GraphLookup = Callable[[NameArg], Graph]


def _lookup_in(graphs: Mapping[str, Graph]) -> GraphLookup:
    def lookup(arg: NameArg) -> Graph:
        found = graphs.get(arg.name) or builtin_graph(arg.name)
        if found is None:
            raise SpecResolutionError(f"unresolved graph name '{arg.name}'", arg.pos.line, arg.pos.column)
        return found
    return lookup


def _numbers(call: Call) -> list[int]:
    return [a.value for a in call.args if isinstance(a, NumberArg)]


def _graph_args(call: Call, lookup: GraphLookup) -> list[Graph]:
    return [lookup(a) for a in call.args if isinstance(a, NameArg)]


def resolve_class(call: Call, graphs: Mapping[str, Graph]) -> ClassSpec:
    lookup = _lookup_in(graphs)
    try:
        if call.form == "forb":
            return ClassSpec.forb(*_graph_args(call, lookup))
        elif call.form == "forbcon":
            return ClassSpec.forb_con(*_graph_args(call, lookup))
        elif call.form == "compmax":
            return ClassSpec.comp_max(*_numbers(call))
        elif call.form == "compcond":
            return ClassSpec.comp_cond(*_numbers(call))
        elif call.form == "notallembed":
            return ClassSpec.not_all_embed(*_graph_args(call, lookup))
        elif call.form == "notboth":
            p, q = [a.bits for a in call.args if isinstance(a, BitsArg)]
            return ClassSpec.not_both(lookup(call.args[0]), p, q)
        elif call.form == "sentence":
            expr = call.args[0].expr
            env = {a.name: lookup(NameArg(a.name, a.pos)) for a in expr_atoms(expr)}
            return ClassSpec.from_sentence(expr, env)
        elif call.form == "all":
            return ClassSpec.all_graphs()
        elif call.form == "complete":
            return ClassSpec.complete()
        else:
            raise SpecResolutionError(f"unknown class form '{call.form}'", call.pos.line, call.pos.column)
    except SpecResolutionError:
        raise
    except AecLabError as e:
        raise SpecResolutionError(str(e), call.pos.line, call.pos.column)


def resolve_relation(call: Call, graphs: Mapping[str, Graph], strict_attach: bool = False) -> SubmodelRelation:
    lookup = _lookup_in(graphs)
    try:
        if call.form == "component":
            return SubmodelRelation.component(strict_attach)
        elif call.form == "component_strict":
            return SubmodelRelation.component(strict=True)
        elif call.form == "induced":
            return SubmodelRelation.induced_sub()

        g = lookup(call.args[0])
        numbers = _numbers(call)
        if call.form == "forb_bounded":
            return SubmodelRelation.forb_bounded(g, numbers[0])
        elif call.form == "count":
            return SubmodelRelation.count(g)
        elif call.form == "noadd":
            return SubmodelRelation.noadd(g, numbers[0])
        elif call.form == "typeb":
            return SubmodelRelation.type_bounded(g, numbers[0])
        elif call.form == "fc_clique":
            return SubmodelRelation.fc_clique(g)
        elif call.form == "fc_comp":
            return SubmodelRelation.fc_component(g)
        else:
            raise SpecResolutionError(f"unknown relation form '{call.form}'", call.pos.line, call.pos.column)
    except SpecResolutionError:
        raise
    except AecLabError as e:
        raise SpecResolutionError(str(e), call.pos.line, call.pos.column)


def free_graph_names(call: Call, graphs: Mapping[str, Graph]) -> list[str]:
    """Graph names in a literal that neither the environment nor the builtins define"""
    names = []
    for arg in call.args:
        candidates = [arg.name] if isinstance(arg, NameArg) else (
            [a.name for a in expr_atoms(arg.expr)] if isinstance(arg, ExprArg) else []
        )
        for name in candidates:
            if name not in graphs and builtin_graph(name) is None and name not in names:
                names.append(name)
    return names


def resolve_spec(spec: SpecFile, strict_attach: bool = False) -> ResolvedSpec:
    resolved = ResolvedSpec(source=spec, checks=spec.checks)
    for definition in spec.graphs:
        resolved.graphs[definition.name] = definition.to_graph()
    for definition in spec.classes:
        resolved.classes[definition.name] = resolve_class(definition.call, resolved.graphs)
    for definition in spec.relations:
        resolved.relations[definition.name] = resolve_relation(
            definition.call, resolved.graphs, strict_attach
        )
    logger.debug(
        f"resolved {len(resolved.graphs)} graphs, {len(resolved.classes)} classes, "
        f"{len(resolved.relations)} relations, {len(resolved.checks)} checks"
    )
    return resolved
