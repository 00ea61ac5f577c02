"""Tests for the corrperf command line."""
import json

from corrperf.cli import main


def _write_config(tmp_path, **fields):
    document = {"grid": {"points": 24}, **fields}
    path = tmp_path / "config.json"
    path.write_text(json.dumps(document))
    return path


def test_run_is_deterministic(tmp_path):
    """Two runs of the same config write byte-identical CSVs."""
    config = _write_config(tmp_path, experiment="local-vs-nonlocal")
    output = tmp_path / "fig.csv"
    assert main(["run", str(config), "--events", "silent", "--output", str(output)]) == 0
    first = output.read_bytes()
    assert main(["run", str(config), "--events", "silent", "--output", str(output)]) == 0
    assert output.read_bytes() == first

    lines = first.decode().splitlines()
    assert lines[0] == "g_tau,p_N,p_N_second,diff"
    assert len(lines) == 25


def test_run_writes_manifest(tmp_path, capsys):
    config = _write_config(tmp_path, experiment="three-body")
    output = tmp_path / "three.csv"
    assert main(["run", str(config), "--events", "silent", "--set", f"output={json.dumps(str(output))}"]) == 0
    manifest = json.loads((tmp_path / "three.csv.manifest.json").read_text())
    assert manifest["experiment"] == "three-body"
    assert manifest["config"]["couplings"]["gprime_ratio"] == 0.1
    assert manifest["rows"] == 24
    assert manifest["run_id"]
    assert "three-body: 24 rows" in capsys.readouterr().out


def test_invalid_config_exit_status(tmp_path, capsys):
    config = _write_config(tmp_path, colour="red")
    assert main(["run", str(config), "--events", "silent", "--output", str(tmp_path / "x.csv")]) == 2
    assert "invalid config" in capsys.readouterr().err


def test_invalid_model_exit_status(tmp_path):
    """local-split needs n | N."""
    config = _write_config(tmp_path, experiment="same-size", bath={"N": 8})
    assert main(["run", str(config), "--events", "silent", "--output", str(tmp_path / "x.csv")]) == 2


def test_infeasible_path_exit_status(tmp_path):
    """Asymmetric couplings beyond the dense cap leave no evaluation path."""
    row = [1.0] * 19 + [0.5]
    config = _write_config(
        tmp_path,
        experiment="three-body",
        bath={"N": 20},
        couplings={"table": [row] * 7},
    )
    output = tmp_path / "x.csv"
    assert main(["run", str(config), "--events", "silent", "--output", str(output)]) == 3
    assert not output.exists()


def test_faulty_gate_command(tmp_path):
    output = tmp_path / "gate.csv"
    status = main(
        ["faulty-gate", "--distribution", "uniform", "--n", "3", "--points", "5", "--output", str(output), "--events", "silent"]
    )
    assert status == 0
    lines = output.read_text().splitlines()
    assert lines[0] == "a,f_local,f_global"
    assert len(lines) == 6


def test_events_on_stderr(tmp_path, capsys):
    """The default event sink is stderr, one JSON object per line."""
    config = _write_config(tmp_path, experiment="same-size")
    assert main(["run", str(config), "--output", str(tmp_path / "same.csv")]) == 0
    captured = capsys.readouterr()
    events = [json.loads(line) for line in captured.err.splitlines() if line]
    types = [e["event_type"] for e in events]
    assert types[0] == "run.start" and types[-1] == "run.end"
    assert types.count("path.decision") == 2 and types.count("curve.computed") == 2
    assert types.count("artifact.written") == 2
    assert events[-1]["metadata"]["success"] is True
    assert not any(line.startswith("{") for line in captured.out.splitlines())


def test_coupling_table_agrees_across_methods(tmp_path):
    """A symmetric non-unit table gives the same three-body CSV on the dense and sector paths."""
    table = [[2.0, 2.0]] * 7
    values = {}
    for method in ("dense", "sector"):
        config = _write_config(
            tmp_path, experiment="three-body", bath={"N": 2}, couplings={"table": table}, method=method
        )
        output = tmp_path / f"{method}.csv"
        assert main(["run", str(config), "--events", "silent", "--output", str(output)]) == 0
        rows = output.read_text().splitlines()[1:]
        values[method] = [[float(cell) for cell in row.split(",")] for row in rows]
    for dense_row, sector_row in zip(values["dense"], values["sector"]):
        assert all(abs(a - b) < 1e-10 for a, b in zip(dense_row, sector_row))
    assert len(values["dense"]) == len(values["sector"]) == 24
