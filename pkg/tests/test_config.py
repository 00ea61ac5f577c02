"""Tests for experiment configuration loading."""
import json
import math

import pytest

from corrperf.config import Experiment, apply_overrides, load_config, parse_override
from corrperf.errors import ConfigError
from corrperf.models import Topology
from corrperf.pauli import CorrectionMode


def test_defaults():
    """An empty config resolves to the Steane-code, 7-spin, beta Omega = 0.01 setup."""
    config = load_config()
    assert config.experiment is Experiment.LOCAL_VS_NONLOCAL
    assert (config.code.n, config.code.k, config.code.d) == (7, 1, 3)
    assert config.bath.N == 7 and config.bath.beta_omega == 0.01
    assert config.bath.topology is Topology.SHARED_NONLOCAL
    assert config.couplings.g == 1.0 and config.couplings.gprime_ratio == 0.1
    assert (config.grid.start, config.grid.stop, config.grid.points) == (0.0, math.pi, 512)
    assert config.mode is CorrectionMode.TOTAL_WEIGHT
    assert config.output == "corrperf.csv"
    assert config.code.to_params().t == 1


def test_overrides_parse_json_values():
    assert parse_override("bath.N=196") == (["bath", "N"], 196)
    assert parse_override("output=runs/a.csv") == (["output"], "runs/a.csv")
    assert parse_override("couplings.table=[[1, 2]]") == (["couplings", "table"], [[1, 2]])
    with pytest.raises(ConfigError):
        parse_override("bath.N")


def test_overrides_applied_before_validation(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"experiment": "three-body", "bath": {"N": 7}}))
    config = load_config(path, ["bath.N=196", "mode=css-split", "code.synthetic=true", "code.t=0"])
    assert config.experiment is Experiment.THREE_BODY
    assert config.bath.N == 196
    assert config.mode is CorrectionMode.CSS_SPLIT
    assert config.code.to_params().synthetic


def test_override_into_scalar_rejected():
    with pytest.raises(ConfigError, match="not a section"):
        apply_overrides({"output": "x.csv"}, ["output.name=y"])


def test_unknown_keys_rejected():
    """Unknown keys fail at any depth and carry the pydantic errors."""
    with pytest.raises(ConfigError) as excinfo:
        load_config(None, ["colour=red"])
    assert excinfo.value.details["errors"][0]["type"] == "extra_forbidden"
    with pytest.raises(ConfigError):
        load_config(None, ["bath.spins=3"])


def test_coupling_fixed_to_one():
    with pytest.raises(ConfigError):
        load_config(None, ["couplings.g=2"])


def test_invalid_values_rejected():
    for override in ("bath.N=-1", "bath.beta_omega=-0.2", "experiment=\"plot\"", "grid.points=0", "grid.stop=-1"):
        with pytest.raises(ConfigError):
            load_config(None, [override])


def test_unreadable_config(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(ConfigError, match="not valid JSON"):
        load_config(broken)


def test_synthetic_code_needs_t():
    config = load_config(None, ["code.synthetic=true"])
    with pytest.raises(ConfigError):
        config.code.to_params()
