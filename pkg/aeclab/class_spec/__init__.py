from .class_membership import ClassKind, ClassSpec, eval_sentence, is_hereditary, member
from .spec_data_classes import SpecFile, print_spec
from .spec_parser import parse_class_literal, parse_relation_literal, parse_spec
from .spec_resolver import ResolvedSpec, builtin_graph, resolve_class, resolve_relation, resolve_spec

__all__ = [
    "ClassKind",
    "ClassSpec",
    "ResolvedSpec",
    "SpecFile",
    "builtin_graph",
    "eval_sentence",
    "is_hereditary",
    "member",
    "parse_class_literal",
    "parse_relation_literal",
    "parse_spec",
    "print_spec",
    "resolve_class",
    "resolve_relation",
    "resolve_spec",
]
