# SPDX-FileCopyrightText: 2026-present corrperf contributors
#
# SPDX-License-Identifier: MIT
"""Event objects for corrperf runs."""
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field

from .__about__ import __version__ as SDK_VERSION

# Schema version - increment when event structure changes
SCHEMA_VERSION = "1.0"


class Event(BaseModel):
    """Base event with common fields."""

    event_id: str = Field(..., description="Unique event ID (UUID)")
    timestamp: str = Field(..., description="RFC3339 timestamp")
    event_type: str = Field(..., description="Type of event")
    experiment: str = Field(..., description="Experiment name")
    run_id: Optional[str] = Field(None, description="Run identifier")
    metadata: Dict[str, Any] = Field(default_factory=dict, description="Additional metadata")
    schema_version: str = Field(default=SCHEMA_VERSION, description="Event schema version")
    sdk_version: str = Field(default=SDK_VERSION, description="corrperf version")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "event_id": "550e8400-e29b-41d4-a716-446655440000",
                "timestamp": "2026-01-01T00:00:00.000Z",
                "event_type": "curve.computed",
                "experiment": "local-vs-nonlocal",
                "run_id": "run-456",
                "metadata": {"model": "[7,1,3] shared-nonlocal N=7 bO=0.01", "method": "sector"},
            }
        }
    )


def run_start_event(
    event_id: str,
    timestamp: str,
    experiment: str,
    run_id: str,
    config: Optional[Dict[str, Any]] = None,
) -> Event:
    """Create a run.start event."""
    metadata: Dict[str, Any] = {}
    if config:
        metadata["config"] = config
    return Event(
        event_id=event_id,
        timestamp=timestamp,
        event_type="run.start",
        experiment=experiment,
        run_id=run_id,
        metadata=metadata,
    )


def run_end_event(
    event_id: str,
    timestamp: str,
    experiment: str,
    run_id: str,
    success: bool,
    error: Optional[Dict[str, Any]] = None,
    # Summary fields
    curves: int = 0,
    grid_points: int = 0,
    sector_curves: int = 0,
    dense_curves: int = 0,
    checks_total: int = 0,
    checks_failed: int = 0,
    max_deviation: float = 0.0,
    artifacts: int = 0,
    avg_curve_latency_ms: float = 0.0,
    total_run_duration_ms: float = 0.0,
) -> Event:
    """Create a run.end event with summary statistics."""
    metadata: Dict[str, Any] = {
        "success": success,
        "summary": {
            "curves": {
                "total": curves,
                "grid_points": grid_points,
                "sector": sector_curves,
                "dense": dense_curves,
            },
            "validation": {
                "checks": checks_total,
                "failed": checks_failed,
                "max_deviation": max_deviation,
            },
            "latencies": {
                "avg_curve_ms": avg_curve_latency_ms,
                "total_run_ms": total_run_duration_ms,
            },
            "artifacts": artifacts,
        },
    }
    if error:
        metadata["error"] = error
    return Event(
        event_id=event_id,
        timestamp=timestamp,
        event_type="run.end",
        experiment=experiment,
        run_id=run_id,
        metadata=metadata,
    )


def path_decision_event(
    event_id: str,
    timestamp: str,
    experiment: str,
    run_id: Optional[str],
    model: str,
    method: str,
    reason: str,
    latency_ms: float,
) -> Event:
    """Create a path.decision event."""
    return Event(
        event_id=event_id,
        timestamp=timestamp,
        event_type="path.decision",
        experiment=experiment,
        run_id=run_id,
        metadata={
            "model": model,
            "method": method,
            "reason": reason,
            "latency_ms": latency_ms,
        },
    )


def curve_computed_event(
    event_id: str,
    timestamp: str,
    experiment: str,
    run_id: Optional[str],
    model: str,
    method: str,
    mode: str,
    points: int,
    min_value: float,
    max_value: float,
    latency_ms: float,
) -> Event:
    """Create a curve.computed event."""
    return Event(
        event_id=event_id,
        timestamp=timestamp,
        event_type="curve.computed",
        experiment=experiment,
        run_id=run_id,
        metadata={
            "model": model,
            "method": method,
            "mode": mode,
            "points": points,
            "min": min_value,
            "max": max_value,
            "latency_ms": latency_ms,
        },
    )


def validation_check_event(
    event_id: str,
    timestamp: str,
    experiment: str,
    run_id: Optional[str],
    name: str,
    deviation: float,
    tolerance: float,
    passed: bool,
) -> Event:
    """Create a validation.check event."""
    return Event(
        event_id=event_id,
        timestamp=timestamp,
        event_type="validation.check",
        experiment=experiment,
        run_id=run_id,
        metadata={
            "name": name,
            "deviation": deviation,
            "tolerance": tolerance,
            "passed": passed,
        },
    )


def artifact_written_event(
    event_id: str,
    timestamp: str,
    experiment: str,
    run_id: Optional[str],
    path: str,
    rows: Optional[int] = None,
) -> Event:
    """Create an artifact.written event."""
    metadata: Dict[str, Any] = {"path": path}
    if rows is not None:
        metadata["rows"] = rows
    return Event(
        event_id=event_id,
        timestamp=timestamp,
        event_type="artifact.written",
        experiment=experiment,
        run_id=run_id,
        metadata=metadata,
    )
