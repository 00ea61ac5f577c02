# SPDX-FileCopyrightText: 2026-present corrperf contributors
#
# SPDX-License-Identifier: MIT
"""Experiment execution: models, sweeps, validation and artifacts."""
import json
import math
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from .__about__ import __version__
from .client import EventClient
from .config import Experiment, ExperimentConfig
from .errors import ValidationFailure
from .evaluator import PerformanceCurve, curve_difference, default_grid, sweep, write_curves_csv
from .gates import Gaussian, GateNoiseSpec, Uniform, fidelity_sweep, holder_check, write_fidelity_csv
from .models import NoiseModel, Topology, build_model
from .policy import PathPolicy
from .run import ExperimentRun
from .util import write_csv, write_text_atomic
from .validation import run_validation


class RunResult(BaseModel):
    """What a finished experiment reports back to the caller."""

    experiment: Experiment
    run_id: Optional[str]
    output: str
    rows: int
    summary: Dict[str, Any] = Field(default_factory=dict)


def _model(config: ExperimentConfig, topology: Topology, gprime_ratio: float) -> NoiseModel:
    description: Dict[str, Any] = {
        "code": config.code.to_params(),
        "topology": topology,
        "N": config.bath.N,
        "beta_omega": config.bath.beta_omega,
        "gprime_ratio": gprime_ratio,
    }
    if config.couplings.table is None:
        description["g"] = config.couplings.g
    else:
        # the table's reference scale becomes g
        description["couplings"] = config.couplings.table
    return build_model(description)


def experiment_models(config: ExperimentConfig) -> Tuple[NoiseModel, NoiseModel]:
    """The two models whose curves are compared; the diff column is ``first - second``.

    local-vs-nonlocal: per-qubit-local against shared-nonlocal baths of N spins each.
    same-size: local-split against shared-nonlocal with N spins in total.
    three-body: two-body against three-body coupling on ``bath.topology``.
    """
    experiment = config.experiment
    if experiment is Experiment.LOCAL_VS_NONLOCAL:
        return (
            _model(config, Topology.PER_QUBIT_LOCAL, 0.0),
            _model(config, Topology.SHARED_NONLOCAL, 0.0),
        )
    if experiment is Experiment.SAME_SIZE:
        return (
            _model(config, Topology.LOCAL_SPLIT, 0.0),
            _model(config, Topology.SHARED_NONLOCAL, 0.0),
        )
    if experiment is Experiment.THREE_BODY:
        topology = config.bath.topology
        return _model(config, topology, 0.0), _model(config, topology, config.couplings.gprime_ratio)
    raise ValueError(f"{experiment.value} compares no bath models")


def _curve_summary(first: PerformanceCurve, second: PerformanceCurve) -> Dict[str, Any]:
    diff = curve_difference(first, second)
    return {
        "first": first.model_tag,
        "second": second.model_tag,
        "max_abs_diff": float(np.max(np.abs(diff))),
        "min_diff": float(np.min(diff)),
        "max_diff": float(np.max(diff)),
        "sign_change": bool(np.any(diff > 0) and np.any(diff < 0)),
    }


def _run_curves(config: ExperimentConfig, run: ExperimentRun) -> Tuple[int, Dict[str, Any]]:
    models = experiment_models(config)
    grid = default_grid(config.grid.start, config.grid.stop, config.grid.points)
    policy = PathPolicy(prefer=config.method)
    first, second = sweep(
        list(models), mode=config.mode, grid=grid, policy=policy, run=run, max_workers=config.workers
    )
    rows = write_curves_csv(config.output, first, second)
    return rows, _curve_summary(first, second)


def _run_faulty_gate(config: ExperimentConfig, run: ExperimentRun) -> Tuple[int, Dict[str, Any]]:
    gate = config.gate
    widths = np.linspace(0.0, gate.max_width, gate.points)

    specs = []
    for a in widths:
        scale = float(a) / gate.strength
        dist = Gaussian(sigma=scale) if gate.distribution == "gaussian" else Uniform(a=scale)
        specs.extend(
            GateNoiseSpec(n=n, strength=gate.strength, distribution=dist, squared=gate.squared)
            for n in range(1, gate.n + 1)
        )
    report = holder_check(specs, tolerance=gate.tolerance)
    run.record_check(f"holder[{gate.distribution}]", max(report.max_violation, 0.0), gate.tolerance, True)

    results = fidelity_sweep(gate.distribution, widths, gate.n, gate.strength, gate.squared)
    rows = write_fidelity_csv(config.output, results)
    summary = {
        "holder_checked": report.checked,
        "holder_max_violation": report.max_violation,
        "max_error_estimate": max(r.error_estimate for _, r in results),
    }
    return rows, summary


def _run_validate(config: ExperimentConfig, run: ExperimentRun) -> Tuple[int, Dict[str, Any]]:
    report = run_validation(tolerance=config.tolerance, run=run)
    rows = write_csv(
        config.output,
        ("check", "deviation", "tolerance", "passed"),
        ((c.name, c.deviation, c.tolerance, str(c.passed).lower()) for c in report.checks),
    )
    summary = {
        "checks": len(report.checks),
        "failed": len(report.failures),
        "max_deviation": report.max_deviation,
    }
    if not report.passed:
        raise ValidationFailure(
            f"{len(report.failures)} check(s) above tolerance {config.tolerance:g}",
            details={"failed": [c.name for c in report.failures], "max_deviation": report.max_deviation},
        )
    return rows, summary


_HANDLERS = {
    Experiment.LOCAL_VS_NONLOCAL: _run_curves,
    Experiment.SAME_SIZE: _run_curves,
    Experiment.THREE_BODY: _run_curves,
    Experiment.FAULTY_GATE: _run_faulty_gate,
    Experiment.VALIDATE: _run_validate,
}


def write_manifest(config: ExperimentConfig, run_id: Optional[str], rows: int, summary: Dict[str, Any]) -> str:
    """``<output>.manifest.json`` echoing the resolved config and software version."""
    manifest = {
        "corrperf_version": __version__,
        "run_id": run_id,
        "experiment": config.experiment.value,
        "config": config.model_dump(mode="json"),
        "output": config.output,
        "rows": rows,
        "summary": summary,
    }
    path = str(config.manifest_path)
    write_text_atomic(path, json.dumps(manifest, indent=2, sort_keys=True, default=_json_default) + "\n")
    return path


def _json_default(value: Any) -> Any:
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def run_experiment(config: ExperimentConfig, client: Optional[EventClient] = None) -> RunResult:
    """Run one configured experiment and write its CSV and manifest.

    Outputs are written only after all computation for them finished. A
    failing ``validate`` suite still writes its CSV before raising.

    Raises:
        ModelError, InfeasiblePathError, DimensionError, HolderViolationError, ValidationFailure
    """
    handler = _HANDLERS[config.experiment]
    with ExperimentRun(config.experiment.value, client=client, config=config.model_dump(mode="json")) as run:
        rows, summary = handler(config, run)
        run.record_artifact(config.output, rows)
        manifest = write_manifest(config, run.run_id, rows, summary)
        run.record_artifact(manifest)
    return RunResult(experiment=config.experiment, run_id=run.run_id, output=config.output, rows=rows, summary=summary)


def format_summary(result: RunResult) -> List[str]:
    """Human-readable lines, numbers with 17 significant digits."""
    lines = [f"{result.experiment.value}: {result.rows} rows -> {result.output}"]
    for key, value in result.summary.items():
        if isinstance(value, float) and math.isfinite(value):
            value = f"{value:.17g}"
        lines.append(f"  {key}: {value}")
    return lines
