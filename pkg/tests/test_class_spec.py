import itertools

import pytest
from hypothesis import given, settings, strategies as st

from aeclab.class_spec import (
    ClassKind,
    ClassSpec,
    builtin_graph,
    is_hereditary,
    member,
    parse_class_literal,
    parse_relation_literal,
    parse_spec,
    print_spec,
    resolve_class,
    resolve_relation,
    resolve_spec,
)
from aeclab.class_spec.class_membership import realizes_both
from aeclab.class_spec.spec_data_classes import Atom, Binary, BitsArg, NameArg, Not, NumberArg
from aeclab.constructions import (
    enumerate_graphs,
    enumerate_graphs_upto,
    gen_complete,
    gen_cycle,
    gen_edgeless,
    gen_path,
    random_graph,
)
from aeclab.errors import GraphInputError, SpecResolutionError, SpecSyntaxError
from aeclab.graph_core import Graph, disjoint_union, induced, relabel
from aeclab.relations import RelationKind

ROUND_TRIP_CORPUS = [
    "graph A { vertices: 0; edges:; }",
    "graph A { vertices: 2; edges: (1,0); }",
    "graph T { vertices: 3; edges: (0,1), (0,2), (1,2); }\nclass K = forb(T)",
    "graph P { vertices: 3; edges: (0,1), (1,2); }\nclass K = forbcon(P)",
    "class K = compmax(3)",
    "class K = compcond(2, 2)",
    "class K = notallembed(K3, C5, C7)",
    "class K = notboth(K1, [1], [0])",
    "class K = notboth(P2, [1, 0], [0, 1])",
    "class K = all",
    "class K = complete",
    "class K = sentence(embeds(K3) -> embeds(C4))",
    "class K = sentence(!embeds(K3) & !(embeds(P4) | embeds(C4)))",
    "class K = sentence(embeds(K2) <-> embeds(E2))",
    "class K = sentence((embeds(K2) & embeds(E2)) & embeds(P3))",
    "class K = sentence(embeds(K1) -> embeds(K2) -> embeds(K3))",
    "relation R = component\nrelation S = component_strict\nrelation I = induced",
    "graph G { vertices: 5; edges:; }\nrelation R = noadd(G, 2)\nrelation S = typeb(G, 2)\nrelation C = count(G)",
    "relation R = forb_bounded(P4, 2)\nrelation F = fc_clique(K3)\nrelation D = fc_comp(P3)",
    "# comment line\ngraph M { vertices: 2; edges: (0,1); }\nclass K = compmax(2)\nrelation R = induced\n"
    "check member(M, K)\ncheck axioms(R, K)\ncheck amalgam(K, R, K1, M, M)\ncheck jep(K, R, M, M, join)",
]


class TestParser:
    @pytest.mark.parametrize("text", ROUND_TRIP_CORPUS)
    def test_print_then_parse_is_identity(self, text):
        spec = parse_spec(text)
        printed = print_spec(spec)
        assert parse_spec(printed) == spec
        assert print_spec(parse_spec(printed)) == printed

    def test_sample_spec(self, sample_spec_text):
        spec = parse_spec(sample_spec_text)
        assert [g.name for g in spec.graphs] == ["T", "P", "B"]
        assert spec.classes[0].call.args == (NameArg("P"),)
        assert spec.relations[0].call.form == "fc_clique"
        assert spec.checks[0].call.form == "member"

    def test_edges_are_sorted(self):
        spec = parse_spec("graph A { vertices: 3; edges: (2,1), (1,0); }")
        assert spec.graphs[0].edges == ((0, 1), (1, 2))

    def test_call_arguments(self):
        call = parse_class_literal("notboth(K1, [1], [0])")
        assert call.args == (NameArg("K1"), BitsArg((1,)), BitsArg((0,)))
        assert parse_relation_literal("noadd(G, 2)").args == (NameArg("G"), NumberArg(2))

    def test_sentence_precedence(self):
        call = parse_class_literal("sentence(!embeds(A) & embeds(B) | embeds(C))")
        expr = call.args[0].expr
        assert expr == Binary("|", Binary("&", Not(Atom("A")), Atom("B")), Atom("C"))

    def test_implication_is_right_associative(self):
        expr = parse_class_literal("sentence(embeds(A) -> embeds(B) -> embeds(C))").args[0].expr
        assert expr == Binary("->", Atom("A"), Binary("->", Atom("B"), Atom("C")))


class TestParserErrors:
    def test_missing_comma_is_positioned(self):
        text = "graph G { vertices: 3; edges: (0,1), (1,2); }\nclass K = forb(G)\nclass L = compcond(2 3)\n"
        with pytest.raises(SpecSyntaxError) as exc:
            parse_spec(text)
        assert str(exc.value) == "line 3, column 22: expected ','"
        assert (exc.value.line, exc.value.column) == (3, 22)

    def test_unexpected_character(self):
        with pytest.raises(SpecSyntaxError) as exc:
            parse_spec("class K = compmax(3) $")
        assert exc.value.column == 22

    def test_unknown_form(self):
        with pytest.raises(SpecSyntaxError, match="unknown class form 'forbidden'"):
            parse_spec("class K = forbidden(K3)")

    def test_loop_rejected(self):
        with pytest.raises(SpecSyntaxError, match="loop"):
            parse_spec("graph A { vertices: 2; edges: (1,1); }")

    def test_out_of_range_edge(self):
        with pytest.raises(SpecSyntaxError, match="out of range"):
            parse_spec("graph A { vertices: 2; edges: (0,2); }")

    def test_duplicate_edge(self):
        with pytest.raises(SpecSyntaxError, match="duplicate edge"):
            parse_spec("graph A { vertices: 2; edges: (0,1), (1,0); }")

    def test_too_many_arguments(self):
        with pytest.raises(SpecSyntaxError, match="expected '\\)'"):
            parse_spec("class K = compmax(3, 4)")

    def test_bits_must_be_binary(self):
        with pytest.raises(SpecSyntaxError, match="0 or 1"):
            parse_spec("class K = notboth(K1, [2], [0])")

    def test_trailing_tokens_after_literal(self):
        with pytest.raises(SpecSyntaxError):
            parse_relation_literal("induced induced")

    def test_unresolved_name(self):
        with pytest.raises(SpecResolutionError) as exc:
            parse_spec("class K = forb(Q)")
        assert (exc.value.line, exc.value.column) == (1, 16)

    def test_duplicate_name(self):
        with pytest.raises(SpecResolutionError, match="duplicate name 'K'"):
            parse_spec("class K = all\nclass K = complete")

    def test_kind_mismatch(self):
        with pytest.raises(SpecResolutionError, match="is a class"):
            parse_spec("class K = all\nrelation R = count(K)")

    def test_unknown_strategy(self):
        text = "class K = all\nrelation R = induced\ncheck jep(K, R, K1, K1, glue)"
        with pytest.raises(SpecResolutionError, match="unknown strategy"):
            parse_spec(text)


class TestResolver:
    def test_builtin_graphs(self):
        assert builtin_graph("K3") == gen_complete(3)
        assert builtin_graph("E2") == gen_edgeless(2)
        assert builtin_graph("P4") == gen_path(4)
        assert builtin_graph("C5") == gen_cycle(5)
        assert builtin_graph("C2") is None
        assert builtin_graph("X3") is None

    def test_resolve_sample(self, sample_spec_text):
        resolved = resolve_spec(parse_spec(sample_spec_text))
        assert resolved.graphs["T"] == gen_complete(3)
        assert resolved.classes["K"] == ClassSpec.forb(gen_path(3))
        assert resolved.relations["R"].kind == RelationKind.FC_CLIQUE
        assert len(resolved.checks) == 1

    def test_user_graph_shadows_builtin(self):
        resolved = resolve_spec(parse_spec("graph K3 { vertices: 1; edges:; }\nclass K = forb(K3)"))
        assert resolved.classes["K"].family == (Graph(1),)

    def test_strict_attach(self):
        resolved = resolve_spec(parse_spec("relation R = component"), strict_attach=True)
        assert resolved.relations["R"].kind == RelationKind.COMPONENT_STRICT

    def test_bad_parameters_become_positioned_errors(self):
        spec = parse_spec("class K = compmax(0)", check=False)
        with pytest.raises(SpecResolutionError) as exc:
            resolve_spec(spec)
        assert exc.value.line == 1

    def test_notboth_pattern_length(self):
        with pytest.raises(SpecResolutionError, match="length"):
            resolve_spec(parse_spec("class K = notboth(K2, [1], [0])"))

    def test_literals_against_environment(self):
        env = {"G": gen_edgeless(5)}
        rel = resolve_relation(parse_relation_literal("noadd(G, 2)"), env)
        assert rel.forbidden == gen_edgeless(5) and rel.param == 2
        assert resolve_class(parse_class_literal("forbcon(G)"), env).kind == ClassKind.FORB_CON


class TestMembership:
    def test_forb(self, c5):
        assert member(c5, ClassSpec.forb(gen_complete(3)))
        assert not member(gen_complete(4), ClassSpec.forb(gen_complete(3)))

    def test_forb_con_looks_at_components_only(self):
        k = ClassSpec.forb_con(gen_complete(2))
        assert not member(disjoint_union(gen_complete(2), gen_complete(1))[0], k)
        assert member(gen_path(3), k)

    def test_comp_max(self, triangle):
        assert member(triangle, ClassSpec.comp_max(3))
        assert not member(gen_path(4), ClassSpec.comp_max(3))

    def test_comp_cond(self):
        k = ClassSpec.comp_cond(2, 2)
        assert member(gen_path(5), k)
        assert member(gen_edgeless(4), k)
        assert not member(disjoint_union(gen_path(3), gen_complete(1))[0], k)

    def test_not_all_embed(self):
        k = ClassSpec.not_all_embed(gen_complete(3), gen_cycle(5), gen_cycle(7))
        assert member(disjoint_union(gen_complete(3), gen_cycle(5))[0], k)
        both = disjoint_union(disjoint_union(gen_complete(3), gen_cycle(5))[0], gen_cycle(7))[0]
        assert not member(both, k)

    def test_not_both(self, path3):
        k = ClassSpec.not_both(gen_complete(1), (1,), (0,))
        assert not member(path3, k)
        assert realizes_both(path3, k) == ((0,), 1, 2)
        assert member(gen_complete(3), k)
        assert member(gen_edgeless(3), k)

    def test_not_both_needs_distinct_patterns(self):
        with pytest.raises(GraphInputError):
            ClassSpec.not_both(gen_complete(1), (1,), (1,))

    def test_sentence(self, c5):
        call = parse_class_literal("sentence(embeds(K3) -> embeds(K4))")
        k = resolve_class(call, {})
        assert member(c5, k)
        assert not member(gen_complete(3), k)
        assert member(gen_complete(4), k)

    def test_all_and_complete(self, path3, triangle):
        assert member(path3, ClassSpec.all_graphs())
        assert member(triangle, ClassSpec.complete())
        assert not member(path3, ClassSpec.complete())
        assert member(Graph(0), ClassSpec.complete())


class TestHereditary:
    def test_kinds(self):
        assert is_hereditary(ClassSpec.forb(gen_complete(3)))
        assert is_hereditary(ClassSpec.comp_max(2))
        assert not is_hereditary(ClassSpec.comp_cond(2, 2))
        assert not is_hereditary(ClassSpec.forb_con(gen_path(3)))

    def test_sentences_by_polarity(self):
        negative = resolve_class(parse_class_literal("sentence(!embeds(K3) & !embeds(C4))"), {})
        positive = resolve_class(parse_class_literal("sentence(embeds(K3) -> embeds(K4))"), {})
        assert is_hereditary(negative)
        assert not is_hereditary(positive)


SMALL_FORBIDDEN = enumerate_graphs(2) + enumerate_graphs(3)

RELABEL_CLASSES = [
    ClassSpec.forb(gen_path(3)),
    ClassSpec.forb(gen_complete(3), gen_edgeless(3)),
    ClassSpec.forb_con(gen_complete(2)),
    ClassSpec.comp_max(2),
    ClassSpec.comp_cond(2, 2),
    ClassSpec.not_all_embed(gen_complete(3), gen_edgeless(3)),
    ClassSpec.not_both(gen_complete(1), (1,), (0,)),
    ClassSpec.complete(),
]


class TestMembershipInvariants:
    def test_forb_is_antitone_in_the_family(self):
        for family in itertools.combinations(SMALL_FORBIDDEN, 2):
            for extra in SMALL_FORBIDDEN:
                larger = ClassSpec.forb(*family, extra)
                smaller = ClassSpec.forb(*family)
                for m in enumerate_graphs_upto(5):
                    if member(m, larger):
                        assert member(m, smaller), (family, extra, m)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_comp_max_implies_comp_cond(self, n):
        for k in range(1, 5):
            for m in enumerate_graphs_upto(5):
                if member(m, ClassSpec.comp_max(n)):
                    assert member(m, ClassSpec.comp_cond(k, n)), (k, m)

    @pytest.mark.parametrize("h", SMALL_FORBIDDEN, ids=repr)
    def test_forb_closed_under_induced_subgraphs(self, h):
        k = ClassSpec.forb(h)
        for m in enumerate_graphs_upto(5):
            if not member(m, k):
                continue
            for size in range(m.order + 1):
                for s in itertools.combinations(m.vertices, size):
                    assert member(induced(m, s), k), (m, s)

    @settings(max_examples=80, deadline=None)
    @given(
        st.sampled_from(RELABEL_CLASSES),
        st.integers(min_value=0, max_value=6),
        st.sampled_from([0.2, 0.5, 0.8]),
        st.integers(min_value=0, max_value=10_000),
        st.data(),
    )
    def test_member_invariant_under_relabeling(self, spec, order, p, seed, data):
        m = random_graph(order, p, seed)
        permutation = data.draw(st.permutations(list(range(order))))
        assert member(m, spec) == member(relabel(m, permutation), spec)
