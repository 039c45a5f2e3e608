"""Recursive-descent parser for aeclab spec files.

    spec     := stmt*
    stmt     := 'graph' NAME '{' 'vertices' ':' NUM ';' 'edges' ':' [edge (',' edge)*] ';' '}'
              | 'class' NAME '=' call | 'relation' NAME '=' call | 'check' call
    call     := NAME [ '(' arg (',' arg)* ')' ]
    expr     := impl ('<->' impl)*
    impl     := or ['->' impl]
    or       := and ('|' and)*
    and      := unary ('&' unary)*
    unary    := '!' unary | 'embeds' '(' NAME ')' | '(' expr ')'

Comments run from '#' to the end of the line.
"""
import re
from dataclasses import dataclass
from typing import Optional

from ..errors import SpecResolutionError, SpecSyntaxError
from .spec_data_classes import (
    BITS, CHECK_FORMS, CLASS, CLASS_FORMS, EXPR, GRAPH, GRAPHS, JEP_STRATEGIES, NAT,
    RELATION, RELATION_FORMS, WORD,
    Atom, Binary, BitsArg, Call, CheckStmt, ClassDef, Expr, ExprArg, GraphDef, NameArg,
    Not, NumberArg, Position, RelationDef, SpecFile, expr_atoms,
)
from .spec_resolver import builtin_graph

TOKEN_PATTERN = re.compile(r"""
    (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<space>[ \t\r]+)
  | (?P<op><->|->|[{}()\[\],;:=!&|])
  | (?P<number>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<mismatch>.)
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # ident, number, op, eof
    text: str
    pos: Position

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else f"'{self.text}'"


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start = 1, 0
    for match in TOKEN_PATTERN.finditer(text):
        kind = match.lastgroup
        pos = Position(line, match.start() - line_start + 1)
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind == "mismatch":
            raise SpecSyntaxError(f"unexpected character '{match.group()}'", pos.line, pos.column)
        elif kind not in ("comment", "space"):
            tokens.append(Token(kind, match.group(), pos))
    tokens.append(Token("eof", "", Position(line, len(text) - line_start + 1)))
    return tokens


class SpecParser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    # Token helpers

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "eof":
            self.index += 1
        return token

    def error(self, message: str, token: Optional[Token] = None) -> SpecSyntaxError:
        token = token or self.peek()
        return SpecSyntaxError(message, token.pos.line, token.pos.column)

    def at_op(self, op: str) -> bool:
        token = self.peek()
        return token.kind == "op" and token.text == op

    def expect_op(self, op: str) -> Token:
        if not self.at_op(op):
            raise self.error(f"expected '{op}'")
        return self.advance()

    def expect_ident(self, what: str = "a name") -> Token:
        if self.peek().kind != "ident":
            raise self.error(f"expected {what}, found {self.peek().describe()}")
        return self.advance()

    def expect_keyword(self, word: str) -> Token:
        token = self.peek()
        if token.kind != "ident" or token.text != word:
            raise self.error(f"expected '{word}'")
        return self.advance()

    def expect_number(self) -> int:
        if self.peek().kind != "number":
            raise self.error(f"expected a number, found {self.peek().describe()}")
        return int(self.advance().text)

    # Statements

    def parse(self) -> SpecFile:
        statements = []
        while self.peek().kind != "eof":
            statements.append(self.statement())
        return SpecFile(tuple(statements))

    def statement(self):
        token = self.peek()
        if token.kind == "ident" and token.text == "graph":
            return self.graph_def()
        if token.kind == "ident" and token.text in ("class", "relation"):
            self.advance()
            name = self.expect_ident()
            self.expect_op("=")
            if token.text == "class":
                return ClassDef(name.text, self.call(CLASS_FORMS, "class form"), token.pos)
            return RelationDef(name.text, self.call(RELATION_FORMS, "relation form"), token.pos)
        if token.kind == "ident" and token.text == "check":
            self.advance()
            return CheckStmt(self.call(CHECK_FORMS, "check command"), token.pos)
        raise self.error(f"expected 'graph', 'class', 'relation' or 'check', found {token.describe()}")

    def graph_def(self) -> GraphDef:
        start = self.advance()
        name = self.expect_ident("a graph name")
        self.expect_op("{")
        self.expect_keyword("vertices")
        self.expect_op(":")
        order = self.expect_number()
        self.expect_op(";")
        self.expect_keyword("edges")
        self.expect_op(":")
        edges = []
        seen = set()
        if not self.at_op(";"):
            while True:
                open_paren = self.expect_op("(")
                u = self.expect_number()
                self.expect_op(",")
                v = self.expect_number()
                self.expect_op(")")
                pair = (min(u, v), max(u, v))
                if u == v:
                    raise self.error(f"loop ({u},{v}) is not allowed", open_paren)
                if max(u, v) >= order:
                    raise self.error(f"edge ({u},{v}) out of range for {order} vertices", open_paren)
                if pair in seen:
                    raise self.error(f"duplicate edge ({u},{v})", open_paren)
                seen.add(pair)
                edges.append(pair)
                if not self.at_op(","):
                    break
                self.advance()
        self.expect_op(";")
        self.expect_op("}")
        return GraphDef(name.text, order, tuple(sorted(edges)), start.pos)

    # Calls

    def call(self, forms: dict[str, tuple[str, ...]], what: str) -> Call:
        head = self.expect_ident(what)
        if head.text not in forms:
            raise self.error(f"unknown {what} '{head.text}'", head)
        kinds = forms[head.text]
        if not kinds:
            return Call(head.text, (), head.pos)
        self.expect_op("(")
        args = []
        variadic = kinds[-1] == GRAPHS
        index = 0
        while True:
            kind = kinds[min(index, len(kinds) - 1)]
            args.append(self.arg(kind))
            index += 1
            if self.at_op(","):
                if index >= len(kinds) and not variadic:
                    raise self.error("expected ')'")
                self.advance()
                continue
            if self.at_op(")"):
                if index < len(kinds):
                    raise self.error("expected ','")
                self.advance()
                break
            if index < len(kinds) or (variadic and self.peek().kind in ("ident", "number")):
                raise self.error("expected ','")
            raise self.error("expected ')'" if not variadic else "expected ',' or ')'")
        return Call(head.text, tuple(args), head.pos)

    def arg(self, kind: str):
        token = self.peek()
        if kind == NAT:
            return NumberArg(self.expect_number(), token.pos)
        if kind == BITS:
            self.expect_op("[")
            bits = []
            if not self.at_op("]"):
                while True:
                    bit_token = self.peek()
                    bit = self.expect_number()
                    if bit not in (0, 1):
                        raise self.error("pattern entries must be 0 or 1", bit_token)
                    bits.append(bit)
                    if not self.at_op(","):
                        break
                    self.advance()
            self.expect_op("]")
            return BitsArg(tuple(bits), token.pos)
        if kind == EXPR:
            return ExprArg(self.expr())
        return NameArg(self.expect_ident().text, token.pos)

    # Sentences

    def expr(self) -> Expr:
        left = self.implication()
        while self.at_op("<->"):
            self.advance()
            left = Binary("<->", left, self.implication())
        return left

    def implication(self) -> Expr:
        left = self.disjunction()
        if self.at_op("->"):
            self.advance()
            return Binary("->", left, self.implication())
        return left

    def disjunction(self) -> Expr:
        left = self.conjunction()
        while self.at_op("|"):
            self.advance()
            left = Binary("|", left, self.conjunction())
        return left

    def conjunction(self) -> Expr:
        left = self.unary()
        while self.at_op("&"):
            self.advance()
            left = Binary("&", left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.at_op("!"):
            self.advance()
            return Not(self.unary())
        if self.at_op("("):
            self.advance()
            inner = self.expr()
            self.expect_op(")")
            return inner
        token = self.peek()
        if token.kind == "ident" and token.text == "embeds":
            self.advance()
            self.expect_op("(")
            name = self.expect_ident("a graph name")
            self.expect_op(")")
            return Atom(name.text, name.pos)
        raise self.error(f"expected 'embeds', '!' or '(', found {token.describe()}")


def _name_args(call: Call, kinds: tuple[str, ...]):
    """Yield (kind, NameArg) pairs of a call, expanding variadic graph lists"""
    for i, arg in enumerate(call.args):
        kind = kinds[min(i, len(kinds) - 1)]
        if kind == GRAPHS:
            kind = GRAPH
        if isinstance(arg, NameArg):
            yield kind, arg
        elif isinstance(arg, ExprArg):
            for atom in expr_atoms(arg.expr):
                yield GRAPH, NameArg(atom.name, atom.pos)


def check_names(spec: SpecFile) -> None:
    """Reject duplicate definitions and references that do not resolve to the right kind"""
    kinds: dict[str, str] = {}
    for statement in spec.statements:
        if isinstance(statement, CheckStmt):
            continue
        kind = GRAPH if isinstance(statement, GraphDef) else CLASS if isinstance(statement, ClassDef) else RELATION
        if statement.name in kinds:
            raise SpecResolutionError(
                f"duplicate name '{statement.name}'", statement.pos.line, statement.pos.column
            )
        kinds[statement.name] = kind

    def resolve(kind: str, arg: NameArg) -> None:
        if kind == WORD:
            if arg.name not in JEP_STRATEGIES:
                raise SpecResolutionError(
                    f"unknown strategy '{arg.name}', expected one of {', '.join(JEP_STRATEGIES)}",
                    arg.pos.line, arg.pos.column,
                )
            return
        found = kinds.get(arg.name)
        if found is None and kind == GRAPH and builtin_graph(arg.name) is not None:
            return
        if found is None:
            raise SpecResolutionError(f"unresolved {kind} name '{arg.name}'", arg.pos.line, arg.pos.column)
        if found != kind:
            raise SpecResolutionError(f"'{arg.name}' is a {found}, expected a {kind}", arg.pos.line, arg.pos.column)

    for statement in spec.statements:
        forms = CLASS_FORMS if isinstance(statement, ClassDef) else (
            RELATION_FORMS if isinstance(statement, RelationDef) else CHECK_FORMS
        )
        if isinstance(statement, GraphDef):
            continue
        for kind, arg in _name_args(statement.call, forms[statement.call.form]):
            resolve(kind, arg)


def parse_spec(text: str, check: bool = True) -> SpecFile:
    spec = SpecParser(text).parse()
    if check:
        check_names(spec)
    return spec


def _parse_literal(text: str, forms: dict[str, tuple[str, ...]], what: str) -> Call:
    parser = SpecParser(text)
    call = parser.call(forms, what)
    if parser.peek().kind != "eof":
        raise parser.error(f"unexpected {parser.peek().describe()} after {what}")
    return call


def parse_relation_literal(text: str) -> Call:
    return _parse_literal(text, RELATION_FORMS, "relation form")


def parse_class_literal(text: str) -> Call:
    return _parse_literal(text, CLASS_FORMS, "class form")
