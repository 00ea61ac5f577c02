# SPDX-FileCopyrightText: 2026-present corrperf contributors
#
# SPDX-License-Identifier: MIT
"""Oracle-equivalence and invariant suite.

Every check reduces to one non-negative deviation compared against a
tolerance; the suite never stops at the first failure.
"""
import math
from typing import TYPE_CHECKING, Callable, Iterator, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from .channels import (
    chi_from_kraus,
    depolarizing_kraus,
    independent_closed_form,
    performance_from_chi,
    tensor_product,
)
from .errors import HolderViolationError
from .evaluator import (
    default_grid,
    eigensystem,
    kraus_from_propagator,
    performance_curve_dense,
    performance_direct,
    performance_sector,
    performance_summands,
    propagator_from_eigensystem,
)
from .gates import Gaussian, GateNoiseSpec, Uniform, holder_check
from .models import BathSpec, NoiseModel, Topology, bath_basis_weights, hamiltonian_diagonal
from .pauli import CodeParams, CorrectionMode

if TYPE_CHECKING:
    from .run import ExperimentRun

ORACLE_SPIN_CAP = 8
CHI_BATH_SPIN_CAP = 4
ORACLE_BETA_OMEGA = 0.5
CLOSED_FORM_PROBABILITIES = (0.0, 0.01, 0.1)
HOLDER_SCALES = 20


class ValidationCheck(BaseModel):
    name: str
    deviation: float = Field(..., description="Largest absolute deviation found")
    tolerance: float
    passed: bool


class ValidationReport(BaseModel):
    tolerance: float
    checks: List[ValidationCheck] = Field(default_factory=list)

    @property
    def max_deviation(self) -> float:
        return max((c.deviation for c in self.checks), default=0.0)

    @property
    def failures(self) -> List[ValidationCheck]:
        return [c for c in self.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failures


def oracle_instances(max_spins: int = ORACLE_SPIN_CAP) -> Iterator[NoiseModel]:
    """Downsized models (n <= 3, t <= 1, bath <= 4 spins) small enough for the dense oracle."""
    for n in (1, 2, 3):
        for t in (0, 1):
            code = CodeParams.synthetic_code(n, t)
            for topology in Topology:
                for N in (1, 2, 3, 4):
                    if topology is Topology.LOCAL_SPLIT and N % n:
                        continue
                    for ratio in (0.0, 0.1):
                        bath = BathSpec.from_beta_omega(topology, N, ORACLE_BETA_OMEGA)
                        model = NoiseModel(code=code, bath=bath, g_prime=ratio)
                        if model.n + model.total_bath_spins <= max_spins:
                            yield model


def sector_dense_deviation(model: NoiseModel, grid: np.ndarray, mode: CorrectionMode) -> float:
    sector = performance_sector(model, mode=mode, grid=grid).as_array()
    dense = performance_curve_dense(model, mode=mode, grid=grid).as_array()
    return float(np.max(np.abs(sector - dense)))


def chi_route_deviation(model: NoiseModel, grid: np.ndarray, mode: CorrectionMode) -> float:
    """``performance_from_chi(chi_from_kraus(...))`` against the literal trace formula."""
    w, V = eigensystem(np.diag(hamiltonian_diagonal(model)))
    weights = bath_basis_weights(model)
    worst = 0.0
    for x in grid:
        U = propagator_from_eigensystem(w, V, x / model.bath.g)
        chi = chi_from_kraus(kraus_from_propagator(U, weights, model.n))
        direct = performance_direct(U, weights, model.code, mode)
        worst = max(worst, abs(performance_from_chi(chi, model.code, mode) - direct))
    return worst


def kraus_completeness_deviation(model: NoiseModel, x: float) -> float:
    w, V = eigensystem(np.diag(hamiltonian_diagonal(model)))
    U = propagator_from_eigensystem(w, V, x / model.bath.g)
    return kraus_from_propagator(U, bath_basis_weights(model), model.n).completeness_defect()


def omega_cancellation_deviation(model: NoiseModel, grid: np.ndarray, omega: float = 2.5) -> float:
    """Changing Omega inside the propagator with frozen thermal weights leaves p_N unchanged."""
    weights = bath_basis_weights(model)
    base = performance_curve_dense(model, grid=grid, weights=weights).as_array()
    shifted = performance_curve_dense(model.with_omega(omega), grid=grid, weights=weights).as_array()
    return float(np.max(np.abs(base - shifted)))


def xy_summand_deviation(model: NoiseModel, x: float) -> float:
    """Largest trace-formula summand over strings with an X or Y factor."""
    w, V = eigensystem(np.diag(hamiltonian_diagonal(model)))
    U = propagator_from_eigensystem(w, V, x / model.bath.g)
    strings, terms = performance_summands(U, bath_basis_weights(model), model.code)
    return max((abs(term) for p, term in zip(strings, terms) if not p.is_diagonal), default=0.0)


def closed_form_deviation(p: float) -> float:
    """7-fold depolarizing channel on [7,1,3] through the chi route against the binomial sum."""
    code = CodeParams(n=7, k=1, d=3)
    single = chi_from_kraus(depolarizing_kraus(p))
    chi = tensor_product([single] * code.n)
    return abs(performance_from_chi(chi, code) - independent_closed_form(code.n, code.t, p))


def holder_deviation(distribution: str, tolerance: float) -> float:
    """Largest ``F_local - F_global`` over 20 scales up to pi/2 and n = 1..7 (0 when ordered)."""
    specs = []
    for scale in np.linspace(0.0, math.pi / 2, HOLDER_SCALES):
        dist = Gaussian(sigma=float(scale)) if distribution == "gaussian" else Uniform(a=float(scale))
        specs.extend(GateNoiseSpec(n=n, strength=1.0, distribution=dist) for n in range(1, 8))
    try:
        report = holder_check(specs, tolerance=tolerance)
    except HolderViolationError as exc:
        return float((exc.details or {}).get("max_violation", math.inf))
    return max(report.max_violation, 0.0)


def run_validation(
    tolerance: float = 1e-9,
    grid_points: int = 64,
    run: Optional["ExperimentRun"] = None,
) -> ValidationReport:
    """Run every check and collect the deviations.

    Args:
        tolerance: Deviation above which a check fails
        grid_points: Points of the 0..pi grid used by curve comparisons
        run: Receives one validation.check event per check
    """
    report = ValidationReport(tolerance=tolerance)
    grid = default_grid(points=grid_points)
    chi_grid = grid[:: max(1, grid_points // 4)]

    def record(name: str, measure: Callable[[], float]) -> None:
        deviation = float(measure())
        passed = deviation < tolerance
        report.checks.append(ValidationCheck(name=name, deviation=deviation, tolerance=tolerance, passed=passed))
        if run is not None:
            run.record_check(name, deviation, tolerance, passed)

    for model in oracle_instances():
        for mode in CorrectionMode:
            record(f"sector-vs-dense[{model.tag} {mode.value}]", lambda: sector_dense_deviation(model, grid, mode))
        if model.total_bath_spins <= CHI_BATH_SPIN_CAP:
            record(
                f"chi-vs-direct[{model.tag}]",
                lambda: chi_route_deviation(model, chi_grid, CorrectionMode.TOTAL_WEIGHT),
            )
            record(f"kraus-completeness[{model.tag}]", lambda: kraus_completeness_deviation(model, 0.7))
            record(f"omega-cancellation[{model.tag}]", lambda: omega_cancellation_deviation(model, chi_grid))
            record(f"xy-summands[{model.tag}]", lambda: xy_summand_deviation(model, 0.7))

    for p in CLOSED_FORM_PROBABILITIES:
        record(f"closed-form[p={p:g}]", lambda: closed_form_deviation(p))
    for distribution in ("gaussian", "uniform"):
        record(f"holder[{distribution}]", lambda: holder_deviation(distribution, tolerance))
    return report
