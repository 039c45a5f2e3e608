import pytest

from aeclab.axiom_checks import (
    check_chain_union,
    check_coherence,
    check_joinability,
    check_no_maximal,
    check_remark_homogeneous,
    check_smoothness,
    check_transitivity,
    check_universal,
    limit_standin_forb_bounded,
    limit_standin_smoothness,
    rel_between,
)
from aeclab.class_spec import ClassSpec
from aeclab.constructions import enumerate_graphs, gen_complete, gen_edgeless, gen_path
from aeclab.errors import PreconditionError
from aeclab.graph_core import Graph
from aeclab.models import CertificateKind
from aeclab.relations import SubmodelRelation


class TestTripleChecks:
    def test_transitivity_holds_for_component(self, path3):
        cert = check_transitivity(SubmodelRelation.component(), path3, [[0], [0, 1], [0, 1, 2]])
        assert cert.kind == CertificateKind.PASS
        assert cert.command == "check_transitivity"
        assert cert.inputs.params["sets"] == [[0], [0, 1], [0, 1, 2]]

    def test_vacuous_pass_is_noted(self, path3):
        cert = check_transitivity(SubmodelRelation.component(), path3, [[0, 2], [0, 1, 2], [0, 1, 2]])
        assert cert.kind == CertificateKind.PASS
        assert cert.notes == ["premise fails, pass is vacuous"]

    def test_transitivity_needs_nesting(self, path3):
        with pytest.raises(PreconditionError):
            check_transitivity(SubmodelRelation.component(), path3, [[0, 1], [0], [0, 1, 2]])

    def test_coherence_holds_for_component(self, path3):
        rel = SubmodelRelation.component()
        cert = check_coherence(rel, path3, [[0], [0, 2], [0, 1, 2]], mode="strong")
        assert cert.kind == CertificateKind.PASS
        assert cert.inputs.params["mode"] == "strong"
        cert = check_coherence(rel, path3, [[0, 2], [0, 2], [0, 1, 2]], mode="standard")
        assert cert.kind == CertificateKind.PASS

    def test_coherence_for_noadd(self):
        rel = SubmodelRelation.noadd(gen_edgeless(3), 1)
        cert = check_coherence(rel, gen_edgeless(3), [[0], [0, 1], [0, 1, 2]], mode="strong")
        assert cert.kind == CertificateKind.PASS
        assert cert.witness is None

    def test_coherence_mode_checked(self, path3):
        with pytest.raises(PreconditionError):
            check_coherence(SubmodelRelation.component(), path3, [[0], [0], [0]], mode="weak")

    def test_rel_between(self, path3):
        rel = SubmodelRelation.component()
        assert not rel_between(rel, [0, 2], [0, 1, 2], path3)
        assert rel_between(rel, [0, 2], [0, 2], path3)


class TestChains:
    def test_chain_union_passes(self, path3):
        rel = SubmodelRelation.component()
        cert = check_chain_union(rel, ClassSpec.all_graphs(), path3, [[0], [0, 1], [0, 1, 2]])
        assert cert.kind == CertificateKind.PASS
        assert "finite chains contain their union" in cert.notes[0]

    def test_chain_step_must_be_strong(self, path3):
        with pytest.raises(PreconditionError):
            check_chain_union(SubmodelRelation.component(), ClassSpec.all_graphs(), path3, [[0, 2], [0, 1, 2]])

    def test_smoothness_passes(self, path3):
        cert = check_smoothness(SubmodelRelation.component(), path3, [[0], [0, 1]], [0, 1, 2])
        assert cert.kind == CertificateKind.PASS
        assert cert.inputs.params["target"] == [0, 1, 2]

    def test_smoothness_needs_chain_inside_target(self, path3):
        with pytest.raises(PreconditionError):
            check_smoothness(SubmodelRelation.component(), path3, [[0, 1, 2]], [0, 1])


class TestLimitStandins:
    @pytest.mark.parametrize("kappa", [1, 2, 3, 4])
    def test_smoothness_standin(self, kappa):
        cert = limit_standin_smoothness(gen_edgeless(kappa + 2), kappa)
        assert cert.kind == CertificateKind.WITNESS
        assert cert.witness["M"] == list(range(kappa))
        assert cert.witness["A"] == list(range(kappa))
        assert cert.witness["x"] == kappa
        assert cert.witness["proper_subsets_checked"] == 2 ** kappa - 1

    def test_smoothness_standin_needs_large_g(self):
        with pytest.raises(PreconditionError):
            limit_standin_smoothness(gen_edgeless(3), 3)

    def test_smoothness_standin_passes_when_g_has_an_edge_everywhere(self):
        cert = limit_standin_smoothness(gen_complete(4), 2)
        assert cert.kind == CertificateKind.PASS

    @pytest.mark.parametrize("lam", [1, 2, 3])
    def test_forb_bounded_standin(self, lam):
        cert = limit_standin_forb_bounded(gen_path(lam + 2), lam)
        assert cert.kind == CertificateKind.WITNESS
        assert cert.witness["G_minus"] == list(range(lam))
        assert cert.witness["prefixes_checked"] == lam

    def test_forb_bounded_standin_range(self):
        with pytest.raises(PreconditionError):
            limit_standin_forb_bounded(gen_path(3), 2)


class TestHomogeneous:
    def test_exhaustive_up_to_six_vertices(self):
        for m in range(3, 7):
            for g in enumerate_graphs(m):
                for n in range(1, m - 1):
                    cert = check_remark_homogeneous(g, n)
                    assert cert.kind == CertificateKind.PASS
                    if cert.witness["hypothesis"]:
                        assert cert.witness["complete"] or cert.witness["edgeless"]

    def test_edgeless_satisfies_hypothesis_with_vertices(self):
        cert = check_remark_homogeneous(gen_edgeless(4), 1)
        assert cert.witness["hypothesis"]
        assert cert.witness["edgeless"]
        assert "complete or edgeless" in cert.notes[0]

    def test_separating_pair_reported(self):
        cert = check_remark_homogeneous(gen_path(4), 1)
        assert not cert.witness["hypothesis"]
        assert set(cert.witness["separating"]) == {"A", "x", "y"}

    def test_range(self):
        with pytest.raises(PreconditionError):
            check_remark_homogeneous(gen_path(3), 2)


class TestJoinability:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_edgeless_g(self, n):
        cert = check_joinability(gen_edgeless(2 * n + 1), n)
        assert cert.kind == CertificateKind.PASS
        assert cert.witness["joins"]

    def test_needs_positive_n(self):
        with pytest.raises(PreconditionError):
            check_joinability(gen_edgeless(3), 0)


class TestUniversalAndMaximal:
    def test_hereditary_class_is_closed(self, c5):
        cert = check_universal(ClassSpec.forb(gen_complete(3)), c5)
        assert cert.kind == CertificateKind.PASS
        assert cert.stats.nodes == 2 ** 5

    def test_non_hereditary_class_has_witness(self):
        k = ClassSpec.forb_con(gen_complete(1))
        cert = check_universal(k, gen_path(3))
        assert cert.kind == CertificateKind.WITNESS
        assert cert.witness["subset"] == [0]

    def test_non_member_passes_vacuously(self):
        cert = check_universal(ClassSpec.complete(), gen_path(3))
        assert cert.kind == CertificateKind.PASS

    def test_isolated_vertex_extension_first(self, triangle):
        cert = check_no_maximal(ClassSpec.forb(gen_path(3)), SubmodelRelation.component(), triangle)
        assert cert.kind == CertificateKind.WITNESS
        assert cert.witness["extension"] == {"order": 4, "edges": [[0, 1], [0, 2], [1, 2]]}

    def test_bounded_refutation_when_nothing_fits(self):
        cert = check_no_maximal(ClassSpec.comp_max(1), SubmodelRelation.component(strict=True), Graph(1), 2)
        assert cert.kind == CertificateKind.BOUNDED_REFUTATION
        assert cert.exhaustion.bound == 3
