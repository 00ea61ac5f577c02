# SPDX-FileCopyrightText: 2026-present corrperf contributors
#
# SPDX-License-Identifier: MIT
"""Performance of CSS codes under correlated spin-bath noise."""
from .channels import ChiMatrix, KrausSet, chi_from_kraus, correctable_split, performance_from_chi, submap
from .config import ExperimentConfig, load_config
from .errors import CorrPerfError
from .evaluator import PerformanceCurve, performance_direct, performance_sector, sweep
from .gates import GateFidelityResult, GateNoiseSpec, fidelity_global, fidelity_local, holder_check
from .models import BathSpec, NoiseModel, Topology, build_model, thermal_state
from .pauli import CodeParams, CorrectionMode, PauliString, enumerate_correctable
from .run import ExperimentRun
from .runner import run_experiment

__all__ = [
    "BathSpec",
    "ChiMatrix",
    "CodeParams",
    "CorrPerfError",
    "CorrectionMode",
    "ExperimentConfig",
    "ExperimentRun",
    "GateFidelityResult",
    "GateNoiseSpec",
    "KrausSet",
    "NoiseModel",
    "PauliString",
    "PerformanceCurve",
    "Topology",
    "build_model",
    "chi_from_kraus",
    "correctable_split",
    "enumerate_correctable",
    "fidelity_global",
    "fidelity_local",
    "holder_check",
    "load_config",
    "performance_direct",
    "performance_from_chi",
    "performance_sector",
    "run_experiment",
    "submap",
    "sweep",
    "thermal_state",
]
