"""Test run.end summary statistics."""
import json
import sys
from io import StringIO

from corrperf import ExperimentRun
from corrperf.client import EventClient
from corrperf.evaluator import default_grid, sweep
from corrperf.models import BathSpec, NoiseModel, Topology
from corrperf.pauli import CodeParams


def test_run_summary_counts_curves():
    """path.decision and curve.computed events feed the run.end summary."""
    code = CodeParams.synthetic_code(2, 1)
    models = [
        NoiseModel(code=code, bath=BathSpec.from_beta_omega(Topology.SHARED_NONLOCAL, 3, 0.1)),
        NoiseModel(
            code=code,
            bath=BathSpec.from_beta_omega(Topology.SHARED_NONLOCAL, 2, 0.1, couplings=((1.0, 0.5), (1.0, 1.0))),
        ),
    ]

    captured_output = StringIO()
    original_stdout = sys.stdout
    sys.stdout = captured_output
    try:
        with ExperimentRun("local-vs-nonlocal", client=EventClient(mode="stdout", batch_size=2)) as run:
            sweep(models, grid=default_grid(points=10), run=run)
            run.record_check("sector-vs-dense", 3e-13, 1e-9, True)
            run.record_artifact("out.csv", rows=10)
    finally:
        sys.stdout = original_stdout

    events = [json.loads(line) for line in captured_output.getvalue().splitlines() if line]
    decisions = [e for e in events if e["event_type"] == "path.decision"]
    assert [d["metadata"]["method"] for d in decisions] == ["sector", "dense"]
    assert all(d["metadata"]["reason"] for d in decisions)

    curves = [e for e in events if e["event_type"] == "curve.computed"]
    assert len(curves) == 2
    assert all(abs(c["metadata"]["max"] - 1) < 1e-12 and c["metadata"]["points"] == 10 for c in curves)

    run_end = events[-1]
    assert run_end["event_type"] == "run.end"
    summary = run_end["metadata"]["summary"]
    assert summary["curves"] == {"total": 2, "grid_points": 20, "sector": 1, "dense": 1}
    assert summary["validation"] == {"checks": 1, "failed": 0, "max_deviation": 3e-13}
    assert summary["artifacts"] == 1
    assert {e["run_id"] for e in events} == {run_end["run_id"]}
