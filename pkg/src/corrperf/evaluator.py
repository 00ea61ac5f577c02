# SPDX-FileCopyrightText: 2026-present corrperf contributors
#
# SPDX-License-Identifier: MIT
"""Performance measure p_N(tau_d) of a code in a spin bath.

``p_N = 4^-n sum_{v correctable} Tr[ Tr_S(U^dag S_v) Tr_S(S_v U) rho_B ]``.

Two paths compute it: the dense path evaluates that trace literally from
the system-bath propagator, the sector path uses the magnetization sectors
of symmetric commuting models and reaches baths of hundreds of spins.
Times are dimensionless ``g * tau``.
"""
import math
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.linalg import eigh

from .channels import KrausSet
from .errors import DimensionError, InfeasiblePathError, ModelError, NumericalResidueError
from .models import (
    DENSE_SPIN_CAP,
    NoiseModel,
    ThermalState,
    bath_basis_weights,
    hamiltonian_diagonal,
    model_thermal_state,
    pair_count,
    spin_values,
)
from .pauli import (
    CodeParams,
    CorrectionMode,
    PauliString,
    correctable_z_masks,
    dense_matrix,
    enumerate_correctable,
    z_signs,
)
from .policy import Method, PathPolicy
from .util import popcount, real_or_raise, write_csv

if TYPE_CHECKING:
    from .run import ExperimentRun

RANGE_TOLERANCE = 1e-12
DEFAULT_GRID_POINTS = 512


class PerformanceCurve(BaseModel):
    """p_N sampled over a g*tau grid."""

    model_config = ConfigDict(frozen=True)

    grid: Tuple[float, ...] = Field(..., description="Dimensionless times g*tau_d")
    values: Tuple[float, ...] = Field(..., description="p_N at each grid point")
    model_tag: str = Field(..., description="Model provenance")
    mode: CorrectionMode
    method: Method

    @model_validator(mode="after")
    def _check(self) -> "PerformanceCurve":
        if len(self.grid) != len(self.values):
            raise DimensionError(f"{len(self.values)} values for {len(self.grid)} grid points")
        for x, value in zip(self.grid, self.values):
            if not -RANGE_TOLERANCE <= value <= 1 + RANGE_TOLERANCE:
                raise NumericalResidueError(
                    f"p_N={value!r} at g*tau={x!r} outside [0, 1]", details={"g_tau": x, "p_N": value}
                )
            if x == 0 and abs(value - 1) > RANGE_TOLERANCE:
                raise NumericalResidueError(f"p_N(0)={value!r} differs from 1", details={"p_N": value})
        return self

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)


def default_grid(start: float = 0.0, stop: float = math.pi, points: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    return np.linspace(start, stop, points)


def _check_dense_dim(dim: int) -> None:
    if dim > 1 << DENSE_SPIN_CAP:
        raise DimensionError(f"dense dimension {dim} exceeds 2^{DENSE_SPIN_CAP}")


def eigensystem(H: np.ndarray) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Eigenvalues and eigenvectors of a Hermitian matrix; eigenvectors are None for diagonal input."""
    _check_dense_dim(H.shape[0])
    diagonal = np.diag(H)
    if np.count_nonzero(H) == np.count_nonzero(diagonal):
        return diagonal.real.copy(), None
    return eigh(H)


def propagator_from_eigensystem(w: np.ndarray, V: Optional[np.ndarray], tau: float) -> np.ndarray:
    phases = np.exp(-1j * tau * w)
    if V is None:
        return np.diag(phases)
    return (V * phases) @ V.conj().T


def propagator(H: np.ndarray, tau: float) -> np.ndarray:
    """``U = exp(-i tau H)`` via eigendecomposition."""
    w, V = eigensystem(H)
    return propagator_from_eigensystem(w, V, tau)


def _split_dims(U: np.ndarray, n: int) -> Tuple[int, int]:
    _check_dense_dim(U.shape[0])
    dim_s = 1 << n
    if U.shape[0] % dim_s:
        raise DimensionError(f"propagator of size {U.shape[0]} has no {n}-qubit system factor")
    return dim_s, U.shape[0] // dim_s


def kraus_from_propagator(U: np.ndarray, weights: np.ndarray, n: int) -> KrausSet:
    """``E_{i,j} = sqrt(lambda_i) <b_j| U |b_i>`` over the bath computational basis.

    Operators that vanish identically are dropped.
    """
    dim_s, dim_b = _split_dims(U, n)
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (dim_b,):
        raise DimensionError(f"{weights.shape[0]} bath weights for bath dimension {dim_b}")
    blocks = U.reshape(dim_s, dim_b, dim_s, dim_b)
    ops = []
    for i in range(dim_b):
        if weights[i] <= 0:
            continue
        for j in range(dim_b):
            op = math.sqrt(weights[i]) * blocks[:, j, :, i]
            if np.any(op):
                ops.append(op)
    return KrausSet.of(ops)


def _system_traces(U: np.ndarray, strings: Sequence[PauliString], n: int) -> np.ndarray:
    """``Tr_S(S_v U)`` for each string, stacked as ``(len(strings), dim_b, dim_b)``."""
    dim_s, dim_b = _split_dims(U, n)
    # (b, j, a, k) -> rows (b, a), columns (j, k)
    blocks = U.reshape(dim_s, dim_b, dim_s, dim_b).transpose(0, 2, 1, 3).reshape(dim_s * dim_s, dim_b * dim_b)
    paulis = np.stack([dense_matrix(p).T.reshape(-1) for p in strings])
    return (paulis @ blocks).reshape(len(strings), dim_b, dim_b)


def _diagonal_system_traces(phases: np.ndarray, strings: Sequence[PauliString]) -> np.ndarray:
    """``Tr_S(S_v U)`` for a diagonal ``U`` given as its ``(dim_s, dim_b)`` phase grid.

    Each trace is diagonal in the bath; row ``v`` holds that diagonal.
    """
    diagonals = np.stack([np.diag(dense_matrix(p)) for p in strings])
    return diagonals @ phases


def performance_summands(
    U: np.ndarray,
    rho_b: np.ndarray,
    code: CodeParams,
    mode: CorrectionMode = CorrectionMode.TOTAL_WEIGHT,
) -> Tuple[List[PauliString], np.ndarray]:
    """Per-string terms ``4^-n Tr[Tr_S(U^dag S_v) Tr_S(S_v U) rho_B]`` (complex).

    ``U`` is the full propagator or, for a diagonal one, the vector of its
    diagonal; the latter never materializes a ``dim x dim`` array.
    """
    strings = enumerate_correctable(code, mode)
    rho_b = np.asarray(rho_b)
    if U.ndim == 1:
        dim_s = 1 << code.n
        if U.shape[0] % dim_s:
            raise DimensionError(f"propagator diagonal of size {U.shape[0]} has no {code.n}-qubit system factor")
        traces = _diagonal_system_traces(U.reshape(dim_s, -1), strings)
        populations = rho_b if rho_b.ndim == 1 else np.diag(rho_b)
        if populations.shape != (traces.shape[1],):
            raise DimensionError(f"{populations.shape[0]} bath weights for bath dimension {traces.shape[1]}")
        terms = (np.abs(traces) ** 2 @ populations).astype(np.complex128)
        return strings, terms / 4 ** code.n
    traces = _system_traces(U, strings, code.n)
    if rho_b.ndim == 1:
        terms = np.einsum("vjk,vjk,k->v", traces.conj(), traces, rho_b)
    else:
        terms = np.einsum("vjk,vjl,lk->v", traces.conj(), traces, rho_b)
    return strings, terms / 4 ** code.n


def performance_direct(
    U: np.ndarray,
    rho_b: np.ndarray,
    code: CodeParams,
    mode: CorrectionMode = CorrectionMode.TOTAL_WEIGHT,
) -> float:
    """p_N from a system-bath propagator (or its diagonal) and a bath state (weights vector or density matrix)."""
    _, terms = performance_summands(U, rho_b, code, mode)
    return real_or_raise(complex(np.sum(terms)), "performance_direct")


def _check_code(model: NoiseModel, code: Optional[CodeParams]) -> CodeParams:
    if code is None:
        return model.code
    if code.n != model.n:
        raise DimensionError(f"code of length {code.n} for a {model.n}-qubit model")
    return code


def performance_curve_dense(
    model: NoiseModel,
    code: Optional[CodeParams] = None,
    mode: CorrectionMode = CorrectionMode.TOTAL_WEIGHT,
    grid: Optional[Sequence[float]] = None,
    weights: Optional[np.ndarray] = None,
) -> PerformanceCurve:
    """Dense oracle over a grid. ``weights`` overrides the thermal bath weights.

    Catalog Hamiltonians are diagonal, so the propagator is kept as its
    diagonal of phases.
    """
    code = _check_code(model, code)
    grid = default_grid() if grid is None else np.asarray(grid, dtype=np.float64)
    g = model.bath.g
    if g == 0:
        raise ModelError("zero coupling leaves no g*tau axis")
    energies = hamiltonian_diagonal(model)
    lam = bath_basis_weights(model) if weights is None else np.asarray(weights, dtype=np.float64)
    values = np.empty(len(grid))
    for idx, x in enumerate(grid):
        values[idx] = performance_direct(np.exp(-1j * (x / g) * energies), lam, code, mode)
    return PerformanceCurve(
        grid=tuple(float(x) for x in grid),
        values=tuple(float(v) for v in values),
        model_tag=model.tag,
        mode=CorrectionMode(mode),
        method=Method.DENSE,
    )


def _weight_counts(n: int, z_masks: Sequence[int]) -> np.ndarray:
    counts = np.zeros(n + 1)
    for z in z_masks:
        counts[popcount(z)] += 1
    return counts


def _shared_two_body(x: np.ndarray, thermal: ThermalState, n: int, counts: np.ndarray) -> np.ndarray:
    theta = x[:, None] * thermal.magnetizations[None, :]
    cos2, sin2 = np.cos(theta) ** 2, np.sin(theta) ** 2
    inner = sum(counts[w] * cos2 ** (n - w) * sin2 ** w for w in range(n + 1) if counts[w])
    return np.array([math.fsum(thermal.weights * row) for row in inner])


def _local_two_body(x: np.ndarray, thermal: ThermalState, n: int, counts: np.ndarray) -> np.ndarray:
    theta = x[:, None] * thermal.magnetizations[None, :]
    f0 = np.array([math.fsum(thermal.weights * row) for row in np.cos(theta) ** 2])
    f1 = np.array([math.fsum(thermal.weights * row) for row in np.sin(theta) ** 2])
    return sum(counts[w] * f1 ** w * f0 ** (n - w) for w in range(n + 1) if counts[w])


def _shared_three_body(
    x: np.ndarray, thermal: ThermalState, n: int, z_masks: Sequence[int], ratio: float
) -> np.ndarray:
    phi = spin_values(n).sum(axis=1) + ratio * pair_count(n)
    signs = np.stack([z_signs(n, z) for z in z_masks])
    values = np.empty(len(x))
    for idx, xi in enumerate(x):
        phases = np.exp(-1j * xi * thermal.magnetizations[:, None] * phi[None, :])
        amplitudes = phases @ signs.T / (1 << n)
        inner = np.sum(np.abs(amplitudes) ** 2, axis=1)
        values[idx] = math.fsum(thermal.weights * inner)
    return values


def _local_three_body(
    x: np.ndarray, thermal: ThermalState, n: int, z_masks: Sequence[int], ratio: float
) -> np.ndarray:
    # independent baths: E|sum_s sign(s) prod_m e^{-i x b_m phi_m(s)}|^2
    #   = sum_{s,s'} sign(s) sign(s') prod_m chi(x (phi_m(s) - phi_m(s')))
    s = spin_values(n)
    c = pair_count(n)
    delta = (s[:, None, :] - s[None, :, :]) + ratio * (c[:, None] - c[None, :])[:, :, None]
    unique, inverse = np.unique(delta, return_inverse=True)
    inverse = inverse.reshape(delta.shape)
    signs = np.stack([z_signs(n, z) for z in z_masks])
    values = np.empty(len(x))
    for idx, xi in enumerate(x):
        chi = thermal.characteristic(xi * unique)
        pair = np.prod(chi[inverse], axis=2)
        total = np.einsum("vs,st,vt->", signs, pair, signs)
        values[idx] = real_or_raise(total, "sector three-body sum") / 4 ** n
    return values


def performance_sector(
    model: NoiseModel,
    code: Optional[CodeParams] = None,
    mode: CorrectionMode = CorrectionMode.TOTAL_WEIGHT,
    grid: Optional[Sequence[float]] = None,
) -> PerformanceCurve:
    """Magnetization-sector fast path for symmetric commuting models.

    Only correctable strings without X components contribute: every model
    here is diagonal in the computational basis.
    """
    code = _check_code(model, code)
    if not model.is_symmetric:
        raise InfeasiblePathError(f"{model.tag}: asymmetric couplings need the dense path")
    g = model.bath.g
    if g == 0:
        raise ModelError("zero coupling leaves no g*tau axis")
    x = default_grid() if grid is None else np.asarray(grid, dtype=np.float64)
    n = code.n
    z_masks = correctable_z_masks(code, mode)
    thermal = model_thermal_state(model)

    if model.g_prime == 0:
        counts = _weight_counts(n, z_masks)
        evaluate = _local_two_body if model.is_local else _shared_two_body
        values = evaluate(x, thermal, n, counts)
    else:
        ratio = model.g_prime / g
        evaluate = _local_three_body if model.is_local else _shared_three_body
        values = evaluate(x, thermal, n, z_masks, ratio)

    return PerformanceCurve(
        grid=tuple(float(v) for v in x),
        values=tuple(float(v) for v in values),
        model_tag=model.tag,
        mode=CorrectionMode(mode),
        method=Method.SECTOR,
    )


def evaluate_model(
    model: NoiseModel,
    method: Method,
    code: Optional[CodeParams] = None,
    mode: CorrectionMode = CorrectionMode.TOTAL_WEIGHT,
    grid: Optional[Sequence[float]] = None,
) -> PerformanceCurve:
    if Method(method) is Method.SECTOR:
        return performance_sector(model, code, mode, grid)
    return performance_curve_dense(model, code, mode, grid)


def sweep(
    models: Sequence[NoiseModel],
    code: Optional[CodeParams] = None,
    mode: CorrectionMode = CorrectionMode.TOTAL_WEIGHT,
    grid: Optional[Sequence[float]] = None,
    policy: Optional[PathPolicy] = None,
    run: Optional["ExperimentRun"] = None,
    max_workers: int = 1,
) -> List[PerformanceCurve]:
    """One curve per model on a shared grid, each on the path the policy picks."""
    if not models:
        return []
    policy = policy or PathPolicy()
    grid = default_grid() if grid is None else np.asarray(grid, dtype=np.float64)

    plan = []
    for model in models:
        start = time.time()
        method, reason = policy.choose(model)
        if run is not None:
            run.record_path_decision(model.tag, method, reason, (time.time() - start) * 1000)
        plan.append((model, method))

    def compute(item: Tuple[NoiseModel, Method]) -> Tuple[PerformanceCurve, float]:
        model, method = item
        start = time.time()
        curve = evaluate_model(model, method, code, mode, grid)
        return curve, (time.time() - start) * 1000

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = list(pool.map(compute, plan))
    else:
        results = [compute(item) for item in plan]

    curves = []
    for curve, latency_ms in results:
        if run is not None:
            run.record_curve(curve, latency_ms)
        curves.append(curve)
    return curves


def curve_difference(first: PerformanceCurve, second: PerformanceCurve) -> np.ndarray:
    """``first - second`` pointwise; the grids must match."""
    if first.grid != second.grid:
        raise DimensionError("curves sampled on different grids")
    return first.as_array() - second.as_array()


def three_body_short_time(model: NoiseModel, x: float) -> float:
    """Leading-order loss ``C(n,2) (g'/g)^2 <B^2> (g tau)^2`` caused by the three-body term.

    ``B`` is the total bath magnetization the term couples to.
    """
    thermal = model_thermal_state(model)
    mean = float(thermal.weights @ thermal.magnetizations)
    groups = model.bath_groups
    second = groups * thermal.second_moment() + groups * (groups - 1) * mean ** 2
    ratio = model.g_prime / model.bath.g
    return math.comb(model.n, 2) * ratio ** 2 * second * x ** 2


def write_curves_csv(
    path: Union[str, Path], first: PerformanceCurve, second: Optional[PerformanceCurve] = None
) -> int:
    """``g_tau,p_N`` or ``g_tau,p_N,p_N_second,diff`` rows, 17 significant digits."""
    if second is None:
        return write_csv(path, ("g_tau", "p_N"), zip(first.grid, first.values))
    diff = curve_difference(first, second)
    rows = zip(first.grid, first.values, second.values, (float(d) for d in diff))
    return write_csv(path, ("g_tau", "p_N", "p_N_second", "diff"), rows)
