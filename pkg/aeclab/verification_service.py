import logging
from typing import Any, Callable, Dict, Optional

from .amalgam_search import certify_ap_failure, jep_check, search_amalgam
from .axiom_checks import (
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
)
from .certificates import graph_from_payload
from .class_spec.class_membership import member
from .class_spec.spec_parser import parse_spec
from .class_spec.spec_resolver import ResolvedSpec, resolve_spec
from .errors import AecLabError
from .graph_core import Embedding
from .lst_search import closure_certificate
from .models import Certificate, CertificateKind, VerificationResult
from .relations import rel_holds
from .scenario_runner import replay_scenario

logger = logging.getLogger(__name__)

Replay = Callable[[ResolvedSpec, Dict[str, str], Dict[str, Any]], Certificate]


class ReplayInputs:
    """Role lookups over a resolved certificate spec"""

    def __init__(self, resolved: ResolvedSpec, roles: Dict[str, str]):
        self.resolved = resolved
        self.roles = roles

    def graph(self, role: str):
        return self.resolved.graph(self.roles[role])

    @property
    def class_spec(self):
        return self.resolved.classes[self.roles["class"]]

    @property
    def relation(self):
        return self.resolved.relations[self.roles["relation"]]


def _without(params: Dict[str, Any], *keys: str) -> Dict[str, Any]:
    return {k: v for k, v in params.items() if k not in keys}


def _replay(command: str, inputs: ReplayInputs, params: Dict[str, Any]) -> Certificate:
    if command == "search_amalgam":
        return search_amalgam(
            inputs.class_spec, inputs.relation,
            inputs.graph("m0"), inputs.graph("m1"), inputs.graph("m2"),
            params["e1"], params["e2"], params["bound"], params["disjoint"], params["extra"],
        )
    elif command == "certify_ap_failure":
        return certify_ap_failure(params["scenario"], params["scenario_params"])
    elif command == "jep_check":
        return jep_check(
            inputs.class_spec, inputs.relation, inputs.graph("m"), inputs.graph("other"),
            params["strategy"], params["bound"], params["extra"],
        )
    elif command == "check_transitivity":
        return check_transitivity(inputs.relation, inputs.graph("host"), params["sets"])
    elif command == "check_coherence":
        return check_coherence(inputs.relation, inputs.graph("host"), params["sets"], params["mode"])
    elif command == "check_chain_union":
        return check_chain_union(inputs.relation, inputs.class_spec, inputs.graph("host"), params["chain"])
    elif command == "check_smoothness":
        return check_smoothness(inputs.relation, inputs.graph("host"), params["chain"], params["target"])
    elif command == "limit_standin_smoothness":
        return limit_standin_smoothness(inputs.graph("g"), params["kappa"])
    elif command == "limit_standin_forb_bounded":
        return limit_standin_forb_bounded(inputs.graph("g"), params["lam"])
    elif command == "check_remark_homogeneous":
        return check_remark_homogeneous(inputs.graph("g"), params["n"])
    elif command == "check_joinability":
        return check_joinability(inputs.graph("g"), params["n"])
    elif command == "check_universal":
        return check_universal(inputs.class_spec, inputs.graph("m"))
    elif command == "check_no_maximal":
        return check_no_maximal(inputs.class_spec, inputs.relation, inputs.graph("m"), params["extra"])
    elif command == "minimal_strong_submodels":
        return closure_certificate(
            inputs.graph("N"), params["A"], inputs.relation, inputs.class_spec,
            params=_without(params, "A"),
        )
    elif command == "scenario":
        return replay_scenario(params["scenario"], params["scenario_params"])
    else:
        raise ValueError(f"Unknown certificate command: {command}")


AMALGAM_ROLES = {
    "search_amalgam": ("m1", "m2"),
    "certify_ap_failure": ("m1", "m2"),
    "jep_check": ("m", "other"),
}


class CertificateVerifier:
    """Re-checks certificates: witnesses directly, everything by deterministic replay"""

    def verify(self, certificate: Certificate) -> VerificationResult:
        try:
            resolved = resolve_spec(parse_spec(certificate.inputs.spec))
        except AecLabError as e:
            return VerificationResult(valid=False, error=f"inputs do not parse: {e}", error_code="BAD_INPUTS")
        inputs = ReplayInputs(resolved, certificate.inputs.roles)

        if certificate.kind == CertificateKind.WITNESS and certificate.command in AMALGAM_ROLES:
            witness_result = self.validate_amalgam_witness(certificate, inputs)
            if not witness_result.valid:
                logger.warning(f"Witness check failed: {witness_result.error}")
                return witness_result
        return self.validate_replay(certificate, inputs)

    def validate_amalgam_witness(self, certificate: Certificate, inputs: ReplayInputs) -> VerificationResult:
        """The amalgam is a member and both images are valid strong embeddings agreeing on the base"""
        witness = certificate.witness or {}
        try:
            amalgam = graph_from_payload(witness["amalgam"])
            left_role, right_role = AMALGAM_ROLES[certificate.command]
            left, right = inputs.graph(left_role), inputs.graph(right_role)
            f1, f2 = witness["f1"], witness["f2"]
            class_spec, rel = inputs.class_spec, inputs.relation
        except (KeyError, TypeError, AecLabError) as e:
            return VerificationResult(valid=False, error=f"malformed witness: {e}", error_code="BAD_WITNESS")

        if not member(amalgam, class_spec):
            return VerificationResult(valid=False, error="amalgam is not a member of the class",
                                      error_code="NOT_A_MEMBER")
        for name, g, f in ((left_role, left, f1), (right_role, right, f2)):
            if len(f) != g.order or not Embedding(g, amalgam, f).is_valid():
                return VerificationResult(valid=False, error=f"image of {name} is not an induced embedding",
                                          error_code="BAD_EMBEDDING")
            if not rel_holds(rel, f, amalgam):
                return VerificationResult(valid=False, error=f"image of {name} is not strong",
                                          error_code="NOT_STRONG")
        if certificate.command != "jep_check":
            params = certificate.inputs.params
            m0 = inputs.graph("m0")
            e1, e2 = params.get("e1", list(range(m0.order))), params.get("e2", list(range(m0.order)))
            if any(f1[e1[v]] != f2[e2[v]] for v in m0.vertices):
                return VerificationResult(valid=False, error="embeddings disagree on the base",
                                          error_code="BASE_MISMATCH")
        return VerificationResult(valid=True, message="witness checks passed")

    def validate_replay(self, certificate: Certificate, inputs: ReplayInputs) -> VerificationResult:
        try:
            replayed = _replay(certificate.command, inputs, certificate.inputs.params)
        except (KeyError, ValueError) as e:
            return VerificationResult(valid=False, error=f"replay failed: {e}", error_code="REPLAY_FAILED")

        mismatch = self._first_mismatch(certificate, replayed)
        if mismatch is not None:
            return VerificationResult(valid=False, error=f"replay disagrees on {mismatch}",
                                      error_code="REPLAY_MISMATCH")
        return VerificationResult(valid=True, message=f"{certificate.command} replayed to the same {certificate.kind.value}")

    @staticmethod
    def _first_mismatch(certificate: Certificate, replayed: Certificate) -> Optional[str]:
        if replayed.kind != certificate.kind:
            return "kind"
        if replayed.witness != certificate.witness:
            return "witness"
        if replayed.exhaustion != certificate.exhaustion:
            return "exhaustion"
        return None


def verify_certificate(certificate: Certificate) -> VerificationResult:
    return CertificateVerifier().verify(certificate)
