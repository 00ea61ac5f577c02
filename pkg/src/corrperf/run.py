# SPDX-FileCopyrightText: 2026-present corrperf contributors
#
# SPDX-License-Identifier: MIT
"""Run context manager for corrperf experiments."""
import time
from typing import TYPE_CHECKING, Any, Dict, List, Optional

from .client import EventClient
from .events import (
    artifact_written_event,
    curve_computed_event,
    path_decision_event,
    run_end_event,
    run_start_event,
    validation_check_event,
)
from .util import create_structured_error, new_id, utc_now_iso

if TYPE_CHECKING:
    from .evaluator import PerformanceCurve
    from .policy import Method


class ExperimentRun:
    """Context manager for one experiment run."""

    def __init__(
        self,
        experiment: str,
        client: Optional[EventClient] = None,
        config: Optional[Dict[str, Any]] = None,
    ):
        """Initialize a run.

        Args:
            experiment: Experiment name
            client: Event sink (a silent client when omitted)
            config: Resolved configuration echoed in run.start
        """
        self.experiment = experiment
        self.client = client or EventClient(mode="silent")
        self.config = config
        self.run_id: Optional[str] = None
        self._started = False
        self._start_time: Optional[float] = None

        # Statistics tracking
        self._curves = 0
        self._grid_points = 0
        self._by_method: Dict[str, int] = {"sector": 0, "dense": 0}
        self._curve_latencies: List[float] = []
        self._checks_total = 0
        self._checks_failed = 0
        self._max_deviation = 0.0
        self._artifacts = 0

    def __enter__(self):
        """Enter the run context - emit run.start event."""
        self.run_id = new_id()
        self._started = True
        self._start_time = time.time()

        event = run_start_event(
            event_id=new_id(),
            timestamp=utc_now_iso(),
            experiment=self.experiment,
            run_id=self.run_id,
            config=self.config,
        )
        self.client.emit(event)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """Exit the run context - emit run.end event with summary."""
        if not self._started:
            return False

        success = exc_type is None
        error = None
        if exc_val is not None:
            error = create_structured_error(exc_val, source="system")

        total_run_duration_ms = (time.time() - self._start_time) * 1000 if self._start_time else 0.0
        avg_curve_latency_ms = (
            sum(self._curve_latencies) / len(self._curve_latencies) if self._curve_latencies else 0.0
        )

        event = run_end_event(
            event_id=new_id(),
            timestamp=utc_now_iso(),
            experiment=self.experiment,
            run_id=self.run_id,
            success=success,
            error=error,
            curves=self._curves,
            grid_points=self._grid_points,
            sector_curves=self._by_method["sector"],
            dense_curves=self._by_method["dense"],
            checks_total=self._checks_total,
            checks_failed=self._checks_failed,
            max_deviation=self._max_deviation,
            artifacts=self._artifacts,
            avg_curve_latency_ms=avg_curve_latency_ms,
            total_run_duration_ms=total_run_duration_ms,
        )
        self.client.emit(event)
        self.client.flush()

        # Return False to not suppress exceptions
        return False

    def record_path_decision(self, model: str, method: "Method", reason: str, latency_ms: float) -> None:
        event = path_decision_event(
            event_id=new_id(),
            timestamp=utc_now_iso(),
            experiment=self.experiment,
            run_id=self.run_id,
            model=model,
            method=method.value,
            reason=reason,
            latency_ms=latency_ms,
        )
        self.client.emit(event)

    def record_curve(self, curve: "PerformanceCurve", latency_ms: float) -> None:
        """Record a computed curve for statistics."""
        self._curves += 1
        self._grid_points += len(curve.grid)
        self._by_method[curve.method.value] += 1
        self._curve_latencies.append(latency_ms)
        event = curve_computed_event(
            event_id=new_id(),
            timestamp=utc_now_iso(),
            experiment=self.experiment,
            run_id=self.run_id,
            model=curve.model_tag,
            method=curve.method.value,
            mode=curve.mode.value,
            points=len(curve.values),
            min_value=min(curve.values) if curve.values else 0.0,
            max_value=max(curve.values) if curve.values else 0.0,
            latency_ms=latency_ms,
        )
        self.client.emit(event)

    def record_check(self, name: str, deviation: float, tolerance: float, passed: bool) -> None:
        """Record a validation check."""
        self._checks_total += 1
        if not passed:
            self._checks_failed += 1
        self._max_deviation = max(self._max_deviation, deviation)
        event = validation_check_event(
            event_id=new_id(),
            timestamp=utc_now_iso(),
            experiment=self.experiment,
            run_id=self.run_id,
            name=name,
            deviation=deviation,
            tolerance=tolerance,
            passed=passed,
        )
        self.client.emit(event)

    def record_artifact(self, path: str, rows: Optional[int] = None) -> None:
        """Record a written output file."""
        self._artifacts += 1
        event = artifact_written_event(
            event_id=new_id(),
            timestamp=utc_now_iso(),
            experiment=self.experiment,
            run_id=self.run_id,
            path=path,
            rows=rows,
        )
        self.client.emit(event)
