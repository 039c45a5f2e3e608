"""Certificate construction: every operation records its inputs as spec text it can be replayed from."""
from __future__ import annotations

from typing import Any, Optional

from .class_spec.class_membership import ClassKind, ClassSpec
from .class_spec.spec_data_classes import Atom, Binary, Expr, Not
from .graph_core import Graph, format_graph
from .models import Certificate, CertificateInputs, CertificateKind, Exhaustion, Stats
from .relations import GRAPH_KINDS, SubmodelRelation, relation_literal


def graph_payload(g: Graph) -> dict[str, Any]:
    return {"order": g.order, "edges": [list(e) for e in g.sorted_edges]}


def graph_from_payload(payload: dict[str, Any]) -> Graph:
    return Graph(payload["order"], frozenset(tuple(e) for e in payload["edges"]))


def sorted_set(vertices) -> list[int]:
    return sorted(int(v) for v in vertices)


def rename_atoms(expr: Expr, names: dict[str, str]) -> Expr:
    if isinstance(expr, Atom):
        return Atom(names[expr.name], expr.pos)
    if isinstance(expr, Not):
        return Not(rename_atoms(expr.operand, names))
    return Binary(expr.op, rename_atoms(expr.left, names), rename_atoms(expr.right, names))


class SpecWriter:
    """Accumulates graph, class and relation definitions under generated names"""

    def __init__(self):
        self._graph_names: dict[Graph, str] = {}
        self._graph_lines: list[str] = []
        self._definition_lines: list[str] = []
        self.roles: dict[str, str] = {}

    def graph(self, g: Graph, role: Optional[str] = None) -> str:
        name = self._graph_names.get(g)
        if name is None:
            name = f"G{len(self._graph_names)}"
            self._graph_names[g] = name
            self._graph_lines.append(format_graph(name, g))
        if role is not None:
            self.roles[role] = name
        return name

    def class_call(self, spec: ClassSpec) -> str:
        if spec.kind in (ClassKind.FORB, ClassKind.NOT_ALL_EMBED, ClassKind.FORB_CON):
            return f"{spec.kind.value}(" + ", ".join(self.graph(h) for h in spec.family) + ")"
        elif spec.kind in (ClassKind.COMP_MAX, ClassKind.COMP_COND):
            return f"{spec.kind.value}(" + ", ".join(str(n) for n in spec.numbers) + ")"
        elif spec.kind == ClassKind.NOT_BOTH:
            p, q = ("[" + ", ".join(str(b) for b in bits) + "]" for bits in spec.patterns)
            return f"notboth({self.graph(spec.family[0])}, {p}, {q})"
        elif spec.kind == ClassKind.SENTENCE:
            names = {name: self.graph(g) for name, g in spec.env}
            return f"sentence({rename_atoms(spec.sentence, names).to_text()})"
        return spec.kind.value

    def class_spec(self, spec: ClassSpec, name: str = "K") -> str:
        self._definition_lines.append(f"class {name} = {self.class_call(spec)}")
        self.roles["class"] = name
        return name

    def relation(self, rel: SubmodelRelation, name: str = "R") -> str:
        graph_name = self.graph(rel.forbidden) if rel.kind in GRAPH_KINDS else "G"
        self._definition_lines.append(f"relation {name} = {relation_literal(rel, graph_name)}")
        self.roles["relation"] = name
        return name

    def text(self) -> str:
        return "".join(line + "\n" for line in self._graph_lines + self._definition_lines)

    def certificate(
        self,
        command: str,
        kind: CertificateKind,
        params: Optional[dict[str, Any]] = None,
        witness: Optional[dict[str, Any]] = None,
        exhaustion: Optional[Exhaustion] = None,
        completeness_argument: Optional[str] = None,
        notes: Optional[list[str]] = None,
        nodes: int = 0,
        seed: Optional[int] = None,
    ) -> Certificate:
        return Certificate(
            command=command,
            inputs=CertificateInputs(spec=self.text(), roles=dict(self.roles), params=params or {}),
            kind=kind,
            witness=witness,
            exhaustion=exhaustion,
            completeness_argument=completeness_argument,
            notes=notes or [],
            stats=Stats(nodes=nodes),
            seed=seed,
        )
