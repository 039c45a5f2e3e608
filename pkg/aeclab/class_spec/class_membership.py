"""Graph classes and their membership predicates."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Mapping, Optional

from ..errors import GraphInputError
from ..graph_core import Graph, components, embeds, enumerate_induced_embeddings, induced, is_isomorphic
from .spec_data_classes import Atom, Binary, Expr, Not, expr_atoms

logger = logging.getLogger(__name__)


class ClassKind(Enum):
    FORB = "forb"
    FORB_CON = "forbcon"
    COMP_MAX = "compmax"
    COMP_COND = "compcond"
    NOT_ALL_EMBED = "notallembed"
    NOT_BOTH = "notboth"
    SENTENCE = "sentence"
    ALL = "all"
    COMPLETE = "complete"


@dataclass(frozen=True)
class ClassSpec:
    kind: ClassKind
    family: tuple[Graph, ...] = ()
    numbers: tuple[int, ...] = ()
    patterns: tuple[tuple[int, ...], ...] = ()
    sentence: Optional[Expr] = None
    env: tuple[tuple[str, Graph], ...] = ()

    def __post_init__(self):
        if any(n < 1 for n in self.numbers):
            raise GraphInputError(f"{self.kind.value} parameters must be >= 1, got {list(self.numbers)}")
        if self.kind in (ClassKind.FORB, ClassKind.NOT_ALL_EMBED) and not self.family:
            raise GraphInputError(f"{self.kind.value} needs at least one graph")
        if self.kind == ClassKind.NOT_BOTH:
            g0 = self.family[0]
            p, q = self.patterns
            if len(p) != g0.order or len(q) != g0.order:
                raise GraphInputError(f"notboth patterns must have length {g0.order}")
            if p == q:
                raise GraphInputError("notboth patterns must differ")
        if self.kind == ClassKind.SENTENCE:
            names = dict(self.env)
            missing = sorted({a.name for a in expr_atoms(self.sentence) if a.name not in names})
            if missing:
                raise GraphInputError(f"sentence atoms without graphs: {missing}")

    @classmethod
    def forb(cls, *family: Graph) -> "ClassSpec":
        return cls(ClassKind.FORB, family=tuple(family))

    @classmethod
    def forb_con(cls, g: Graph) -> "ClassSpec":
        return cls(ClassKind.FORB_CON, family=(g,))

    @classmethod
    def comp_max(cls, n: int) -> "ClassSpec":
        return cls(ClassKind.COMP_MAX, numbers=(n,))

    @classmethod
    def comp_cond(cls, k: int, n: int) -> "ClassSpec":
        return cls(ClassKind.COMP_COND, numbers=(k, n))

    @classmethod
    def not_all_embed(cls, *family: Graph) -> "ClassSpec":
        return cls(ClassKind.NOT_ALL_EMBED, family=tuple(family))

    @classmethod
    def not_both(cls, g0: Graph, p, q) -> "ClassSpec":
        return cls(ClassKind.NOT_BOTH, family=(g0,), patterns=(tuple(p), tuple(q)))

    @classmethod
    def from_sentence(cls, expr: Expr, env: Mapping[str, Graph]) -> "ClassSpec":
        used = sorted({a.name for a in expr_atoms(expr)})
        return cls(ClassKind.SENTENCE, sentence=expr, env=tuple((n, env[n]) for n in used if n in env))

    @classmethod
    def all_graphs(cls) -> "ClassSpec":
        return cls(ClassKind.ALL)

    @classmethod
    def complete(cls) -> "ClassSpec":
        return cls(ClassKind.COMPLETE)


@lru_cache(maxsize=200_000)
def member(m: Graph, spec: ClassSpec) -> bool:
    if spec.kind == ClassKind.FORB:
        return not any(embeds(h, m) for h in spec.family)
    elif spec.kind == ClassKind.FORB_CON:
        g = spec.family[0]
        return not any(is_isomorphic(induced(m, block), g) for block in components(m).blocks)
    elif spec.kind == ClassKind.COMP_MAX:
        return all(len(block) <= spec.numbers[0] for block in components(m).blocks)
    elif spec.kind == ClassKind.COMP_COND:
        k, n = spec.numbers
        blocks = components(m).blocks
        return len(blocks) < k or all(len(block) <= n for block in blocks)
    elif spec.kind == ClassKind.NOT_ALL_EMBED:
        return not all(embeds(h, m) for h in spec.family)
    elif spec.kind == ClassKind.NOT_BOTH:
        return realizes_both(m, spec) is None
    elif spec.kind == ClassKind.SENTENCE:
        return eval_sentence(m, spec.sentence, dict(spec.env))
    elif spec.kind == ClassKind.ALL:
        return True
    elif spec.kind == ClassKind.COMPLETE:
        return 2 * m.size == m.order * (m.order - 1)
    else:
        raise ValueError(f"Unknown class kind: {spec.kind}")


def realizes_both(m: Graph, spec: ClassSpec) -> Optional[tuple[tuple[int, ...], int, int]]:
    """First (copy of g0, x, y) with x realizing p and y realizing q over the copy.

    p and q differ, so x and y are distinct vertices.
    """
    g0 = spec.family[0]
    p, q = spec.patterns
    for e in enumerate_induced_embeddings(g0, m):
        image = e.image
        outside = [x for x in m.vertices if x not in image]

        def pattern(x: int) -> tuple[int, ...]:
            return tuple(int(m.has_edge(x, y)) for y in e.mapping)

        xs = [x for x in outside if pattern(x) == p]
        ys = [y for y in outside if pattern(y) == q]
        if xs and ys:
            return e.mapping, xs[0], ys[0]
    return None


def eval_sentence(m: Graph, expr: Expr, env: Mapping[str, Graph]) -> bool:
    if isinstance(expr, Atom):
        return embeds(env[expr.name], m)
    if isinstance(expr, Not):
        return not eval_sentence(m, expr.operand, env)
    left = eval_sentence(m, expr.left, env)
    if expr.op == "&":
        return left and eval_sentence(m, expr.right, env)
    if expr.op == "|":
        return left or eval_sentence(m, expr.right, env)
    if expr.op == "->":
        return (not left) or eval_sentence(m, expr.right, env)
    if expr.op == "<->":
        return left == eval_sentence(m, expr.right, env)
    raise ValueError(f"Unknown connective: {expr.op}")


def atom_polarities(expr: Expr, positive: bool = True) -> set[tuple[str, bool]]:
    if isinstance(expr, Atom):
        return {(expr.name, positive)}
    if isinstance(expr, Not):
        return atom_polarities(expr.operand, not positive)
    if expr.op == "<->":
        sides = atom_polarities(expr.left, True) | atom_polarities(expr.right, True)
        return sides | {(name, not polarity) for name, polarity in sides}
    left_positive = (not positive) if expr.op == "->" else positive
    return atom_polarities(expr.left, left_positive) | atom_polarities(expr.right, positive)


HEREDITARY_KINDS = {
    ClassKind.FORB, ClassKind.COMP_MAX, ClassKind.NOT_ALL_EMBED, ClassKind.NOT_BOTH,
    ClassKind.ALL, ClassKind.COMPLETE,
}


def is_hereditary(spec: ClassSpec) -> bool:
    """Whether membership is closed under induced subgraphs, decided from the form alone.

    A sentence qualifies when every atom occurs negatively; embeds() only
    becomes false when passing to an induced subgraph.
    """
    if spec.kind in HEREDITARY_KINDS:
        return True
    if spec.kind == ClassKind.SENTENCE:
        return all(not positive for _, positive in atom_polarities(spec.sentence))
    return False
