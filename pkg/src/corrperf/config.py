# SPDX-FileCopyrightText: 2026-present corrperf contributors
#
# SPDX-License-Identifier: MIT
"""Experiment configuration."""
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .errors import ConfigError
from .models import Topology
from .pauli import CodeParams, CorrectionMode
from .policy import Method


class Experiment(str, Enum):
    LOCAL_VS_NONLOCAL = "local-vs-nonlocal"
    SAME_SIZE = "same-size"
    THREE_BODY = "three-body"
    FAULTY_GATE = "faulty-gate"
    VALIDATE = "validate"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class CodeConfig(_Section):
    n: int = Field(7, ge=1, description="Code length")
    k: int = Field(1, ge=0, description="Logical qubits")
    d: int = Field(3, ge=1, description="Distance")
    t: Optional[int] = Field(None, ge=0, description="Correctable weight, derived from d unless synthetic")
    synthetic: bool = Field(False, description="Downsized stand-in code correcting weight t")

    def to_params(self) -> CodeParams:
        if self.synthetic:
            if self.t is None:
                raise ConfigError("a synthetic code needs t")
            return CodeParams.synthetic_code(self.n, self.t)
        return CodeParams(n=self.n, k=self.k, d=self.d, t=self.t)


class BathConfig(_Section):
    N: int = Field(7, ge=0, description="Bath spins (per qubit for per-qubit-local)")
    beta_omega: float = Field(0.01, ge=0, description="Dimensionless beta * Omega")
    topology: Topology = Field(Topology.SHARED_NONLOCAL, description="Topology for single-topology experiments")


class CouplingConfig(_Section):
    g: float = Field(1.0, description="System-bath coupling; fixed to 1 so times read as g*tau (unused with a table)")
    gprime_ratio: float = Field(0.1, description="Three-body coupling g'/g")
    table: Optional[List[List[float]]] = Field(
        None, description="Per-pair couplings g_im; their common value (or max |g_im|) sets the g*tau scale"
    )

    @field_validator("g")
    @classmethod
    def _unit_coupling(cls, value: float) -> float:
        if value != 1.0:
            raise ValueError("g is fixed to 1; express times as g*tau")
        return value


class GridConfig(_Section):
    start: float = 0.0
    stop: float = math.pi
    points: int = Field(512, ge=1)

    @model_validator(mode="after")
    def _ordered(self) -> "GridConfig":
        if self.stop < self.start:
            raise ValueError(f"grid stop {self.stop} before start {self.start}")
        return self


class GateConfig(_Section):
    """Faulty-gate sweep: widths ``a = tau_r g * scale`` from 0 to ``max_width``."""

    distribution: Literal["gaussian", "uniform"] = "gaussian"
    n: int = Field(7, ge=1, description="Qubit count of the exported curve; Hölder is checked for 1..n")
    strength: float = Field(1.0, gt=0, description="tau_r * g")
    max_width: float = Field(math.pi / 2, ge=0)
    points: int = Field(20, ge=1)
    squared: bool = Field(False, description="Use cos^2 moments")
    tolerance: float = Field(1e-10, gt=0, description="Hölder tolerance")


class ExperimentConfig(_Section):
    """One experiment run, validated before any computation."""

    experiment: Experiment = Experiment.LOCAL_VS_NONLOCAL
    code: CodeConfig = Field(default_factory=CodeConfig)
    bath: BathConfig = Field(default_factory=BathConfig)
    couplings: CouplingConfig = Field(default_factory=CouplingConfig)
    grid: GridConfig = Field(default_factory=GridConfig)
    mode: CorrectionMode = CorrectionMode.TOTAL_WEIGHT
    method: Optional[Method] = Field(None, description="Force an evaluation path")
    workers: int = Field(1, ge=1, description="Threads used across models")
    gate: GateConfig = Field(default_factory=GateConfig)
    tolerance: float = Field(1e-9, gt=0, description="Deviation allowed by the validate suite")
    output: str = "corrperf.csv"

    @property
    def manifest_path(self) -> Path:
        return Path(self.output + ".manifest.json")


def parse_override(assignment: str) -> Tuple[List[str], Any]:
    """Split ``a.b=value``; the value is parsed as JSON, falling back to a plain string."""
    key, sep, raw = assignment.partition("=")
    path = [part for part in key.strip().split(".") if part]
    if not sep or not path:
        raise ConfigError(f"override {assignment!r} is not of the form key.path=value")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return path, value


def apply_overrides(document: Dict[str, Any], overrides: Iterable[str]) -> Dict[str, Any]:
    """Apply dotted ``--set`` assignments to a raw config document (in place)."""
    for assignment in overrides:
        path, value = parse_override(assignment)
        node = document
        for part in path[:-1]:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigError(f"override {assignment!r}: {part!r} is not a section")
            node = child
        node[path[-1]] = value
    return document


def load_config(path: Optional[Union[str, Path]] = None, overrides: Iterable[str] = ()) -> ExperimentConfig:
    """Read a JSON config (defaults when ``path`` is None), apply overrides and validate.

    Raises:
        ConfigError: unreadable file, malformed JSON or schema violation
    """
    document: Dict[str, Any] = {}
    if path is not None:
        try:
            document = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(document, dict):
            raise ConfigError(f"config {path} must hold a JSON object")
    apply_overrides(document, overrides)
    try:
        return ExperimentConfig.model_validate(document)
    except ValidationError as exc:
        raise ConfigError(
            f"invalid config: {exc.error_count()} error(s)",
            details={"errors": json.loads(exc.json(include_url=False))},
        ) from exc
