# aeclab/main.py
import argparse
import asyncio
import json
import logging
import os
import sys
import tempfile
import time
from pathlib import Path
from typing import Any, Optional

import logfire
from pydantic import ValidationError

from .amalgam_search import jep_check, search_amalgam
from .axiom_suite import run_axiom_suite
from .class_spec.class_membership import ClassSpec, member
from .class_spec.spec_data_classes import CheckStmt, NameArg
from .class_spec.spec_parser import parse_class_literal, parse_relation_literal, parse_spec
from .class_spec.spec_resolver import ResolvedSpec, resolve_class, resolve_relation, resolve_spec
from .config import (
    ENUMERATION_LIMIT,
    LOGFIRE_TOKEN,
    RANDOM_EDGE_PROBABILITIES,
    RANDOM_GRAPHS_PER_SIZE,
    RANDOM_SIZES,
    REPORT_DIR,
)
from .constructions import enumerate_graphs, random_graph
from .errors import AecLabError, GraphInputError
from .graph_core import format_graph
from .models import Certificate, RunConfig, RunReport, RunStatus
from .relations import SubmodelRelation
from .scenario_runner import run_scenario
from .scenarios import ScenarioFactory, build_scenario
from .verification_service import verify_certificate

logger = logging.getLogger(__name__)

COMMANDS = ("validate", "axioms", "amalgamate", "jep", "scenario", "enumerate")
SCENARIO_PARAMS = ("n", "k", "mu", "kappa", "lam", "size")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aeclab",
        description="Check abstract elementary class axioms and amalgamation on finite graphs.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("target", nargs="?", default=None,
                        help="spec file (validate), scenario name (scenario) or order / 'random' (enumerate)")
    parser.add_argument("--spec", dest="spec_file", default=None, help="spec file defining graphs, classes, relations")
    parser.add_argument("--class", dest="class_literal", default=None, help="class name or literal, e.g. forb(G)")
    parser.add_argument("--rel", dest="relation", default=None, help="relation name or literal, e.g. fc_clique(G)")
    parser.add_argument("--max-size", type=int, default=None)
    parser.add_argument("--chain-len", type=int, default=None)
    parser.add_argument("--bound", type=int, default=None)
    parser.add_argument("--extra", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--report", default=None, help="report path (default: <report dir>/<command>.json)")
    parser.add_argument("--strict-attach", action="store_true", default=None)
    parser.add_argument("--disjoint", action="store_true")
    parser.add_argument("--timing", action="store_true", default=None, help="record elapsed_ms in certificates")
    parser.add_argument("--strategy", default="disjoint", choices=("disjoint", "join", "search"))
    for role in ("m0", "m1", "m2", "m", "other"):
        parser.add_argument(f"--{role}", dest=f"role_{role}", default=None, help=f"graph name for {role}")
    for param in SCENARIO_PARAMS:
        parser.add_argument(f"--{param}", dest=f"param_{param}", type=int, default=None)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values: dict[str, Any] = {
        "command": args.command,
        "target": args.target,
        "spec_file": args.spec_file if args.spec_file is not None or args.command != "validate" else args.target,
        "relation": args.relation,
        "class_literal": args.class_literal,
        "disjoint": args.disjoint,
        "strategy": args.strategy,
        "report": args.report,
        "roles": {
            role: getattr(args, f"role_{role}")
            for role in ("m0", "m1", "m2", "m", "other") if getattr(args, f"role_{role}") is not None
        },
        "params": {
            param: getattr(args, f"param_{param}")
            for param in SCENARIO_PARAMS if getattr(args, f"param_{param}") is not None
        },
    }
    for name in ("max_size", "chain_len", "bound", "extra", "seed", "strict_attach", "timing"):
        value = getattr(args, name)
        if value is not None:
            values[name] = value
    if args.command == "scenario" and args.bound is not None:
        values["params"]["bound"] = args.bound
    return RunConfig(**values)


# Inputs

def _load_spec(config: RunConfig) -> ResolvedSpec:
    if config.spec_file is None:
        return ResolvedSpec()
    text = Path(config.spec_file).read_text(encoding="utf-8")
    return resolve_spec(parse_spec(text), config.strict_attach)


def _class_from(literal: Optional[str], resolved: ResolvedSpec) -> ClassSpec:
    if literal is None:
        literal = "K" if "K" in resolved.classes else "all"
    if literal in resolved.classes:
        return resolved.classes[literal]
    return resolve_class(parse_class_literal(literal), resolved.graphs)


def _relation_from(literal: Optional[str], resolved: ResolvedSpec, strict_attach: bool) -> SubmodelRelation:
    if literal is None:
        literal = "R" if "R" in resolved.relations else "induced"
    if literal in resolved.relations:
        return resolved.relations[literal]
    return resolve_relation(parse_relation_literal(literal), resolved.graphs, strict_attach)


def _role_graph(config: RunConfig, resolved: ResolvedSpec, role: str):
    name = config.roles.get(role)
    if name is None:
        raise GraphInputError(f"--{role} is required for {config.command}")
    return resolved.graph(name)


def _certificate_result(certificate: Certificate) -> dict[str, Any]:
    verification = verify_certificate(certificate)
    return {
        "certificate": certificate.model_dump(mode="json"),
        "verified": verification.valid,
        "verification_error": verification.error,
    }


# Commands

def _definition_literal(resolved: ResolvedSpec, name: str) -> str:
    return resolved.source.definition(name).call.to_text()


def _run_check(check: CheckStmt, resolved: ResolvedSpec, config: RunConfig) -> dict[str, Any]:
    form = check.call.form
    names = [a.name for a in check.call.args if isinstance(a, NameArg)]
    result: dict[str, Any] = {"check": check.to_text()}
    if form == "member":
        result["member"] = member(resolved.graph(names[0]), resolved.classes[names[1]])
    elif form == "axioms":
        report = asyncio.run(run_axiom_suite(
            _definition_literal(resolved, names[0]), _definition_literal(resolved, names[1]),
            max_size=config.max_size, chain_len=config.chain_len, env=resolved.graphs,
            strict_attach=config.strict_attach,
        ))
        result["suite"] = report.model_dump(mode="json")
        result["violations"] = report.violations
    elif form == "amalgam":
        class_spec, rel = resolved.classes[names[0]], resolved.relations[names[1]]
        m0, m1, m2 = (resolved.graph(n) for n in names[2:5])
        result.update(_certificate_result(search_amalgam(
            class_spec, rel, m0, m1, m2, size_bound=config.bound, disjoint=config.disjoint,
            max_extra=config.extra,
        )))
    elif form == "jep":
        class_spec, rel = resolved.classes[names[0]], resolved.relations[names[1]]
        result.update(_certificate_result(jep_check(
            class_spec, rel, resolved.graph(names[2]), resolved.graph(names[3]), names[4],
            config.bound, config.extra,
        )))
    else:
        raise ValueError(f"Unknown check: {form}")
    return result


def run_validate(config: RunConfig) -> RunReport:
    if config.spec_file is None:
        raise GraphInputError("validate needs a spec file")
    resolved = _load_spec(config)
    results: list[dict[str, Any]] = [{
        "graphs": sorted(resolved.graphs),
        "classes": sorted(resolved.classes),
        "relations": sorted(resolved.relations),
    }]
    results.extend(_run_check(check, resolved, config) for check in resolved.checks)
    violations = sum(r.get("violations", 0) for r in results)
    status = RunStatus.MISMATCH if violations else RunStatus.OK
    return _report(config, status, results)


def run_axioms(config: RunConfig) -> RunReport:
    if config.relation is None:
        raise GraphInputError("axioms needs --rel")
    resolved = _load_spec(config)
    report = asyncio.run(run_axiom_suite(
        config.relation, config.class_literal, max_size=config.max_size, chain_len=config.chain_len,
        env=resolved.graphs, strict_attach=config.strict_attach,
    ))
    logfire.info("axiom suite {relation}: {violations} violations", relation=config.relation,
                 violations=report.violations)
    status = RunStatus.MISMATCH if report.violations else RunStatus.OK
    return _report(config, status, [report.model_dump(mode="json")], expected="0 violations")


def run_amalgamate(config: RunConfig) -> RunReport:
    resolved = _load_spec(config)
    certificate = search_amalgam(
        _class_from(config.class_literal, resolved),
        _relation_from(config.relation, resolved, config.strict_attach),
        _role_graph(config, resolved, "m0"), _role_graph(config, resolved, "m1"),
        _role_graph(config, resolved, "m2"),
        size_bound=config.bound, disjoint=config.disjoint, max_extra=config.extra,
    )
    return _certificate_report(config, certificate)


def run_jep(config: RunConfig) -> RunReport:
    resolved = _load_spec(config)
    certificate = jep_check(
        _class_from(config.class_literal, resolved),
        _relation_from(config.relation, resolved, config.strict_attach),
        _role_graph(config, resolved, "m"), _role_graph(config, resolved, "other"),
        config.strategy, config.bound, config.extra,
    )
    return _certificate_report(config, certificate)


def run_scenario_command(config: RunConfig) -> RunReport:
    if config.target is None:
        raise GraphInputError(
            f"scenario needs a name, one of {', '.join(ScenarioFactory.get_available_scenarios())}"
        )
    scenario = build_scenario(config.target, config.params)
    certificate = run_scenario(scenario)
    expected = scenario.expected_kind.value
    logfire.info("scenario {name}: {kind} (expected {expected})", name=scenario.name.value,
                 kind=certificate.kind.value, expected=expected)
    report = _certificate_report(config, certificate, expected=expected)
    report.results[0]["manifest"] = scenario.manifest().model_dump(mode="json")
    if certificate.kind.value != expected:
        report.status = RunStatus.MISMATCH
    return report


def run_enumerate(config: RunConfig) -> RunReport:
    if config.target == "random":
        results = [
            {"order": m, "p": p, "index": i, "graph": format_graph("G", random_graph(m, p, config.seed + i))}
            for m in RANDOM_SIZES for p in RANDOM_EDGE_PROBABILITIES for i in range(RANDOM_GRAPHS_PER_SIZE)
        ]
        return _report(config, RunStatus.OK, results)
    try:
        order = int(config.target if config.target is not None else config.max_size)
    except ValueError:
        raise GraphInputError(f"enumerate needs an order or 'random', got '{config.target}'")
    if not 0 <= order <= ENUMERATION_LIMIT:
        raise GraphInputError(f"enumeration order must be within 0..{ENUMERATION_LIMIT}, got {order}")
    graphs = enumerate_graphs(order)
    results = [{"order": order, "count": len(graphs), "graphs": [format_graph("G", g) for g in graphs]}]
    return _report(config, RunStatus.OK, results)


def _certificate_report(config: RunConfig, certificate: Certificate, expected: Optional[str] = None) -> RunReport:
    result = _certificate_result(certificate)
    status = RunStatus.OK if result["verified"] else RunStatus.MISMATCH
    return _report(config, status, [result], expected=expected)


def _report(config: RunConfig, status: RunStatus, results: list, expected: Optional[str] = None) -> RunReport:
    return RunReport(
        command=config.command, config=config.model_dump(mode="json"), status=status,
        expected=expected, results=results,
    )


HANDLERS = {
    "validate": run_validate,
    "axioms": run_axioms,
    "amalgamate": run_amalgamate,
    "jep": run_jep,
    "scenario": run_scenario_command,
    "enumerate": run_enumerate,
}


def run(config: RunConfig) -> RunReport:
    handler = HANDLERS.get(config.command)
    if handler is None:
        raise ValueError(f"Unknown command: {config.command}")
    with logfire.span("aeclab {command}", command=config.command):
        started = time.perf_counter()
        try:
            report = handler(config)
        except (AecLabError, OSError) as e:
            logger.error(f"{config.command} failed: {e}")
            return RunReport(command=config.command, config=config.model_dump(mode="json"),
                             status=RunStatus.ERROR, error=str(e))
        if config.timing:
            elapsed = round((time.perf_counter() - started) * 1000, 3)
            for result in report.results:
                if "certificate" in result:
                    result["certificate"]["stats"]["elapsed_ms"] = elapsed
        return report


# Output

def report_json(report: RunReport) -> str:
    return json.dumps(report.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"


def write_report(report: RunReport, path: Path) -> str:
    """Write the report atomically and return the JSON text written"""
    payload = report_json(report)
    path.parent.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile("w", encoding="utf-8", dir=path.parent, suffix=".tmp", delete=False) as handle:
        handle.write(payload)
    os.replace(handle.name, path)
    return payload


def summarize(payload: dict[str, Any]) -> str:
    lines = [f"aeclab {payload['command']}: {payload['status']}"]
    if payload.get("expected") is not None:
        lines.append(f"  expected: {payload['expected']}")
    if payload.get("error"):
        lines.append(f"  error: {payload['error']}")
    for result in payload.get("results", []):
        if "certificate" in result:
            certificate = result["certificate"]
            verdict = "verified" if result["verified"] else f"NOT verified ({result['verification_error']})"
            lines.append(f"  {certificate['command']}: {certificate['kind']}, {verdict}")
        elif "tallies" in result:
            for name, tally in sorted(result["tallies"].items()):
                lines.append(f"  {name}: {tally['checked']} checked, {tally['violations']} violations")
        elif "check" in result:
            outcome = {k: v for k, v in result.items() if k in ("member", "violations", "verified")}
            lines.append(f"  {result['check']}: {outcome}")
        elif "count" in result:
            lines.append(f"  order {result['order']}: {result['count']} graphs")
    if payload["command"] == "enumerate" and payload.get("results") and "p" in payload["results"][0]:
        lines.append(f"  {len(payload['results'])} random graphs")
    return "\n".join(lines)


def configure_logging() -> None:
    logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")
    logfire.configure(token=LOGFIRE_TOKEN, send_to_logfire="if-token-present", console=False, scrubbing=False)


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging()
    try:
        config = config_from_args(args)
    except ValidationError as e:
        print(f"invalid arguments: {e}", file=sys.stderr)
        return 2

    report = run(config)
    path = Path(config.report) if config.report else Path(REPORT_DIR) / f"{config.command}.json"
    try:
        payload = write_report(report, path)
    except OSError as e:
        print(f"cannot write report {path}: {e}", file=sys.stderr)
        return 2

    if report.error:
        prefix = f"{config.spec_file}: " if config.spec_file else ""
        print(f"{prefix}{report.error}", file=sys.stderr)
    print(summarize(json.loads(payload)))
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
