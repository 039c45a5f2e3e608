from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..graph_core import Edge, Graph, format_graph


@dataclass(frozen=True)
class Position:
    line: int
    column: int


NO_POSITION = Position(0, 0)


# Argument kinds of the call forms below
GRAPH = "graph"
GRAPHS = "graphs+"  # one or more graph names
NAT = "nat"
BITS = "bits"
EXPR = "expr"
CLASS = "class"
RELATION = "relation"
WORD = "word"  # bare keyword such as a JEP strategy

CLASS_FORMS: dict[str, tuple[str, ...]] = {
    "forb": (GRAPHS,),
    "forbcon": (GRAPH,),
    "compmax": (NAT,),
    "compcond": (NAT, NAT),
    "notallembed": (GRAPHS,),
    "notboth": (GRAPH, BITS, BITS),
    "sentence": (EXPR,),
    "all": (),
    "complete": (),
}

RELATION_FORMS: dict[str, tuple[str, ...]] = {
    "component": (),
    "component_strict": (),
    "induced": (),
    "forb_bounded": (GRAPH, NAT),
    "count": (GRAPH,),
    "noadd": (GRAPH, NAT),
    "typeb": (GRAPH, NAT),
    "fc_clique": (GRAPH,),
    "fc_comp": (GRAPH,),
}

CHECK_FORMS: dict[str, tuple[str, ...]] = {
    "member": (GRAPH, CLASS),
    "axioms": (RELATION, CLASS),
    "amalgam": (CLASS, RELATION, GRAPH, GRAPH, GRAPH),
    "jep": (CLASS, RELATION, GRAPH, GRAPH, WORD),
}

JEP_STRATEGIES = ("disjoint", "join", "search")


# Sentence expressions

@dataclass(frozen=True)
class Atom:
    name: str
    pos: Position = field(default=NO_POSITION, compare=False)

    def to_text(self) -> str:
        return f"embeds({self.name})"


@dataclass(frozen=True)
class Not:
    operand: "Expr"

    def to_text(self) -> str:
        return f"!{_wrap(self.operand)}"


@dataclass(frozen=True)
class Binary:
    op: str  # one of & | -> <->
    left: "Expr"
    right: "Expr"

    def to_text(self) -> str:
        return f"{_wrap(self.left)} {self.op} {_wrap(self.right)}"


Expr = Union[Atom, Not, Binary]


def _wrap(expr: Expr) -> str:
    return f"({expr.to_text()})" if isinstance(expr, Binary) else expr.to_text()


def expr_atoms(expr: Expr) -> list[Atom]:
    if isinstance(expr, Atom):
        return [expr]
    if isinstance(expr, Not):
        return expr_atoms(expr.operand)
    return expr_atoms(expr.left) + expr_atoms(expr.right)


# Call arguments

@dataclass(frozen=True)
class NameArg:
    name: str
    pos: Position = field(default=NO_POSITION, compare=False)

    def to_text(self) -> str:
        return self.name


@dataclass(frozen=True)
class NumberArg:
    value: int
    pos: Position = field(default=NO_POSITION, compare=False)

    def to_text(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class BitsArg:
    bits: tuple[int, ...]
    pos: Position = field(default=NO_POSITION, compare=False)

    def to_text(self) -> str:
        return "[" + ", ".join(str(b) for b in self.bits) + "]"


@dataclass(frozen=True)
class ExprArg:
    expr: Expr

    def to_text(self) -> str:
        return self.expr.to_text()


Arg = Union[NameArg, NumberArg, BitsArg, ExprArg]


@dataclass(frozen=True)
class Call:
    form: str
    args: tuple[Arg, ...] = ()
    pos: Position = field(default=NO_POSITION, compare=False)

    def to_text(self) -> str:
        if not self.args:
            return self.form
        return f"{self.form}(" + ", ".join(a.to_text() for a in self.args) + ")"


# Statements

@dataclass(frozen=True)
class GraphDef:
    name: str
    order: int
    edges: tuple[Edge, ...]
    pos: Position = field(default=NO_POSITION, compare=False)

    def to_graph(self) -> Graph:
        return Graph(self.order, frozenset(self.edges))

    def to_text(self) -> str:
        return format_graph(self.name, self.to_graph())


@dataclass(frozen=True)
class ClassDef:
    name: str
    call: Call
    pos: Position = field(default=NO_POSITION, compare=False)

    def to_text(self) -> str:
        return f"class {self.name} = {self.call.to_text()}"


@dataclass(frozen=True)
class RelationDef:
    name: str
    call: Call
    pos: Position = field(default=NO_POSITION, compare=False)

    def to_text(self) -> str:
        return f"relation {self.name} = {self.call.to_text()}"


@dataclass(frozen=True)
class CheckStmt:
    call: Call
    pos: Position = field(default=NO_POSITION, compare=False)

    def to_text(self) -> str:
        return f"check {self.call.to_text()}"


Statement = Union[GraphDef, ClassDef, RelationDef, CheckStmt]


@dataclass(frozen=True)
class SpecFile:
    statements: tuple[Statement, ...] = ()

    @property
    def graphs(self) -> list[GraphDef]:
        return [s for s in self.statements if isinstance(s, GraphDef)]

    @property
    def classes(self) -> list[ClassDef]:
        return [s for s in self.statements if isinstance(s, ClassDef)]

    @property
    def relations(self) -> list[RelationDef]:
        return [s for s in self.statements if isinstance(s, RelationDef)]

    @property
    def checks(self) -> list[CheckStmt]:
        return [s for s in self.statements if isinstance(s, CheckStmt)]

    def definition(self, name: str) -> Optional[Statement]:
        for statement in self.statements:
            if not isinstance(statement, CheckStmt) and statement.name == name:
                return statement
        return None

    def to_text(self) -> str:
        return "".join(s.to_text() + "\n" for s in self.statements)


def print_spec(spec: SpecFile) -> str:
    return spec.to_text()
