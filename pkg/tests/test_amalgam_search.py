import pytest

from aeclab.amalgam_search import certify_ap_failure, jep_check, search_amalgam
from aeclab.certificates import graph_from_payload
from aeclab.class_spec import ClassSpec, member
from aeclab.constructions import enumerate_graphs_upto, gen_complete, gen_edgeless, gen_path, random_triples
from aeclab.errors import PreconditionError
from aeclab.graph_core import Embedding, Graph, amalgam_disjoint_over, components
from aeclab.models import CertificateKind
from aeclab.relations import SubmodelRelation, rel_holds
from aeclab.verification_service import verify_certificate


class TestSearchAmalgam:
    def test_finds_disjoint_amalgam_first(self):
        cert = search_amalgam(
            ClassSpec.all_graphs(), SubmodelRelation.induced_sub(),
            gen_complete(1), gen_complete(2), gen_complete(2),
        )
        assert cert.kind == CertificateKind.WITNESS
        assert cert.witness["identified"] == []
        assert cert.witness["extra_vertices"] == 0
        assert graph_from_payload(cert.witness["amalgam"]).order == 3

    def test_identification_when_class_requires_it(self):
        # compmax(2) forces the two leaves over the shared vertex to coincide
        cert = search_amalgam(
            ClassSpec.comp_max(2), SubmodelRelation.induced_sub(),
            gen_complete(1), gen_complete(2), gen_complete(2),
        )
        assert cert.kind == CertificateKind.WITNESS
        assert cert.witness["identified"] == [[1, 1]]
        assert cert.witness["f2"] == [0, 1]

    def test_disjoint_flag_forbids_identification(self):
        cert = search_amalgam(
            ClassSpec.comp_max(2), SubmodelRelation.induced_sub(),
            gen_complete(1), gen_complete(2), gen_complete(2), disjoint=True,
        )
        assert cert.kind == CertificateKind.BOUNDED_REFUTATION
        assert cert.exhaustion.bound == 7

    def test_explicit_embeddings(self):
        cert = search_amalgam(
            ClassSpec.all_graphs(), SubmodelRelation.induced_sub(),
            gen_complete(1), gen_path(3), gen_complete(2), e1=[1], e2=[1],
        )
        assert cert.kind == CertificateKind.WITNESS
        f1, f2 = cert.witness["f1"], cert.witness["f2"]
        assert f1[1] == f2[1]

    def test_preconditions(self):
        with pytest.raises(PreconditionError, match="does not induced-embed"):
            search_amalgam(
                ClassSpec.all_graphs(), SubmodelRelation.induced_sub(),
                gen_complete(2), gen_edgeless(2), gen_complete(2),
            )
        with pytest.raises(PreconditionError, match="not a member"):
            search_amalgam(
                ClassSpec.comp_max(1), SubmodelRelation.induced_sub(),
                gen_complete(1), gen_complete(2), gen_complete(1),
            )
        with pytest.raises(PreconditionError, match="not a strong submodel"):
            search_amalgam(
                ClassSpec.all_graphs(), SubmodelRelation.component(),
                gen_edgeless(2), gen_path(3), gen_edgeless(2), e1=[0, 2], e2=[0, 1],
            )

    def test_deterministic(self):
        args = (ClassSpec.forb(gen_path(3)), SubmodelRelation.component(),
                gen_complete(1), gen_complete(2), gen_edgeless(2))
        assert search_amalgam(*args) == search_amalgam(*args)


class TestApFailures:
    def test_compmax_complete_refutation(self):
        cert = certify_ap_failure("compmax", {"n": 3})
        assert cert.kind == CertificateKind.COMPLETE_REFUTATION
        assert cert.command == "certify_ap_failure"
        assert cert.completeness_argument
        assert cert.inputs.params["scenario"] == "compmax"

    def test_compcond_bounded_refutation(self):
        cert = certify_ap_failure("compcond", {"k": 2, "n": 2, "bound": 9})
        assert cert.kind == CertificateKind.BOUNDED_REFUTATION
        assert cert.exhaustion.bound == 9
        assert any("component relation" in note for note in cert.notes)

    def test_notboth_bounded_refutation(self):
        cert = certify_ap_failure("notboth", {"bound": 8})
        assert cert.kind == CertificateKind.BOUNDED_REFUTATION
        assert cert.exhaustion.bound == 8

    def test_notallembed_bounded_refutation(self):
        cert = certify_ap_failure("notallembed", {"bound": 15})
        assert cert.kind == CertificateKind.BOUNDED_REFUTATION
        assert cert.exhaustion.bound == 15
        assert cert.notes

    def test_compcond_amalgamates_under_induced_substructure(self):
        star = Graph(3, frozenset({(0, 1), (0, 2)}))
        cert = search_amalgam(
            ClassSpec.comp_cond(2, 2), SubmodelRelation.induced_sub(),
            gen_complete(1), star, gen_edgeless(2), size_bound=5,
        )
        assert cert.kind == CertificateKind.WITNESS
        assert len(components(graph_from_payload(cert.witness["amalgam"]))) == 1

    def test_not_an_ap_scenario(self):
        with pytest.raises(PreconditionError):
            certify_ap_failure("lst-growth")


class TestComponentAmalgams:
    def test_disjoint_amalgam_on_random_triples(self):
        rel = SubmodelRelation.component()

        def accept(triple):
            m0, m1, m2 = triple
            prefix = range(m0.order)
            return rel_holds(rel, prefix, m1) and rel_holds(rel, prefix, m2)

        for m0, m1, m2 in random_triples(200, seed=2024, accept=accept):
            amalgam, f1, f2 = amalgam_disjoint_over(range(m0.order), m1, m2)
            assert f1.is_valid() and f2.is_valid()
            assert rel_holds(rel, f1.mapping, amalgam)
            assert rel_holds(rel, f2.mapping, amalgam)

    def test_disjoint_amalgam_on_small_corpus(self):
        rel = SubmodelRelation.component()
        graphs = [g for g in enumerate_graphs_upto(4) if g.order >= 1]
        base = Graph(1)
        for m1 in graphs:
            for m2 in graphs:
                if m1.order + m2.order > 6:
                    continue
                amalgam, f1, f2 = amalgam_disjoint_over([0], m1, m2)
                assert rel_holds(rel, f1.mapping, amalgam)
                assert rel_holds(rel, f2.mapping, amalgam)
                assert Embedding(base, amalgam, (0,)).is_valid()

    def test_search_always_finds_amalgam_on_random_triples(self):
        rel = SubmodelRelation.component()

        def accept(triple):
            m0, m1, m2 = triple
            prefix = range(m0.order)
            return rel_holds(rel, prefix, m1) and rel_holds(rel, prefix, m2)

        for m0, m1, m2 in random_triples(40, seed=11, accept=accept):
            bound = m1.order + m2.order - m0.order
            cert = search_amalgam(ClassSpec.all_graphs(), rel, m0, m1, m2, size_bound=bound)
            assert cert.kind == CertificateKind.WITNESS, (m0, m1, m2)
            assert verify_certificate(cert).valid

    def test_search_always_finds_amalgam_over_a_vertex(self):
        rel = SubmodelRelation.component()
        graphs = [g for g in enumerate_graphs_upto(3) if g.order >= 1]
        for m1 in graphs:
            for m2 in graphs:
                cert = search_amalgam(ClassSpec.all_graphs(), rel, Graph(1), m1, m2)
                assert cert.kind == CertificateKind.WITNESS, (m1, m2)
                assert verify_certificate(cert).valid


class TestJep:
    def test_disjoint_union_for_forb_of_connected_graph(self):
        k = ClassSpec.forb(gen_path(3))
        members = [g for g in enumerate_graphs_upto(4) if member(g, k)]
        for m in members:
            for n in members:
                cert = jep_check(k, SubmodelRelation.induced_sub(), m, n, "disjoint")
                assert cert.kind == CertificateKind.WITNESS

    def test_join_for_noadd_over_edgeless(self):
        g = gen_edgeless(5)
        k = ClassSpec.forb(g)
        rel = SubmodelRelation.noadd(g, 2)
        members = [m for m in enumerate_graphs_upto(4) if member(m, k) and m.order >= 3]
        for m in members:
            for n in members:
                cert = jep_check(k, rel, m, n, "join")
                assert cert.kind == CertificateKind.WITNESS, (m, n)

    def test_disjoint_strategy_refuted_is_not_a_jep_refutation(self):
        k = ClassSpec.complete()
        cert = jep_check(k, SubmodelRelation.induced_sub(), gen_complete(1), gen_complete(1), "disjoint")
        assert cert.kind == CertificateKind.BOUNDED_REFUTATION
        assert "refutes the strategy" in cert.notes[0]

    def test_search_strategy(self):
        k = ClassSpec.complete()
        cert = jep_check(k, SubmodelRelation.induced_sub(), gen_complete(1), gen_complete(2), "search")
        assert cert.kind == CertificateKind.WITNESS
        assert cert.command == "jep_check"
        assert cert.inputs.roles["m"] != cert.inputs.roles["other"]

    def test_unknown_strategy(self):
        with pytest.raises(PreconditionError):
            jep_check(ClassSpec.all_graphs(), SubmodelRelation.induced_sub(), Graph(1), Graph(1), "glue")

    def test_non_member(self):
        with pytest.raises(PreconditionError):
            jep_check(ClassSpec.complete(), SubmodelRelation.induced_sub(), gen_path(3), Graph(1))
