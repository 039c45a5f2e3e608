# aeclab/models.py
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from .config import (
    DEFAULT_AMALGAM_BOUND,
    DEFAULT_CHAIN_LEN,
    DEFAULT_EXTRA_VERTICES,
    DEFAULT_MAX_SIZE,
    DEFAULT_SEED,
    RECORD_TIMING,
    STRICT_ATTACH,
)


class CertificateKind(str, Enum):
    WITNESS = "witness"
    BOUNDED_REFUTATION = "bounded-refutation"
    COMPLETE_REFUTATION = "complete-refutation"
    PASS = "pass"


class Exhaustion(BaseModel):
    bound: int
    explored: int
    pruned: int = 0


class Stats(BaseModel):
    elapsed_ms: Optional[float] = None  # only filled when timing is requested
    nodes: int = 0


class CertificateInputs(BaseModel):
    spec: str  # self-contained spec text defining every graph, class and relation used
    roles: Dict[str, str] = Field(default_factory=dict)
    params: Dict[str, Any] = Field(default_factory=dict)


class Certificate(BaseModel):
    command: str
    inputs: CertificateInputs
    kind: CertificateKind
    witness: Optional[Dict[str, Any]] = None
    exhaustion: Optional[Exhaustion] = None
    completeness_argument: Optional[str] = None
    notes: List[str] = Field(default_factory=list)
    stats: Stats = Field(default_factory=Stats)
    seed: Optional[int] = None

    @property
    def is_refutation(self) -> bool:
        return self.kind in (CertificateKind.BOUNDED_REFUTATION, CertificateKind.COMPLETE_REFUTATION)


class VerificationResult(BaseModel):
    valid: bool
    message: Optional[str] = None
    error: Optional[str] = None
    error_code: Optional[str] = None


class CheckTally(BaseModel):
    checked: int = 0
    violations: int = 0
    first_violation: Optional[Dict[str, Any]] = None


class SuiteReport(BaseModel):
    relation: str
    class_name: str
    max_size: int
    chain_len: int
    forbidden: List[str] = Field(default_factory=list)
    hosts: int = 0
    tallies: Dict[str, CheckTally] = Field(default_factory=dict)

    @property
    def violations(self) -> int:
        return sum(t.violations for t in self.tallies.values())


class ScenarioManifest(BaseModel):
    name: str
    params: Dict[str, Any]
    expected_kind: CertificateKind
    description: str
    spec: str
    roles: Dict[str, str] = Field(default_factory=dict)
    sets: Dict[str, List[int]] = Field(default_factory=dict)
    documentation_only: bool = False


class RunConfig(BaseModel):
    command: str
    spec_file: Optional[str] = None
    target: Optional[str] = None  # scenario name or enumerate order
    max_size: int = DEFAULT_MAX_SIZE
    chain_len: int = DEFAULT_CHAIN_LEN
    bound: int = DEFAULT_AMALGAM_BOUND
    extra: int = DEFAULT_EXTRA_VERTICES
    seed: int = DEFAULT_SEED
    report: Optional[str] = None
    strict_attach: bool = STRICT_ATTACH
    disjoint: bool = False
    timing: bool = RECORD_TIMING
    relation: Optional[str] = None
    class_literal: Optional[str] = None
    strategy: str = "disjoint"
    roles: Dict[str, str] = Field(default_factory=dict)
    params: Dict[str, int] = Field(default_factory=dict)

    @field_validator("max_size", "chain_len", "bound")
    @classmethod
    def positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("bounds must be >= 1")
        return value

    @field_validator("extra")
    @classmethod
    def non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("extra-vertex budget must be >= 0")
        return value

    @field_validator("seed")
    @classmethod
    def seed_in_range(cls, value: int) -> int:
        if not 0 <= value < 2 ** 64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        return value

    @field_validator("report")
    @classmethod
    def report_parent_exists(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            parent = Path(value).resolve().parent
            if parent.exists() and not parent.is_dir():
                raise ValueError(f"report parent {parent} is not a directory")
        return value


class RunStatus(str, Enum):
    OK = "ok"
    MISMATCH = "mismatch"
    ERROR = "error"


EXIT_CODES = {RunStatus.OK: 0, RunStatus.MISMATCH: 1, RunStatus.ERROR: 2}


class RunReport(BaseModel):
    command: str
    config: Dict[str, Any]
    status: RunStatus
    expected: Optional[str] = None
    results: List[Dict[str, Any]] = Field(default_factory=list)
    error: Optional[str] = None

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]
