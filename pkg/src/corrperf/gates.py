# SPDX-FileCopyrightText: 2026-present corrperf contributors
#
# SPDX-License-Identifier: MIT
"""Average fidelity of rotations driven by a noisy control field.

With rotation strength ``s = tau_r g`` and field noise ``w ~ p(w)``::

    F_local  = ( int cos(s w) p(w) dw )^n
    F_global =   int cos(s w)^n p(w) dw

``squared=True`` replaces ``cos`` by ``cos^2`` in both (the literal
``|Tr(V^dag U)|^2 / d^2`` average).
"""
import math
from enum import Enum
from pathlib import Path
from typing import Annotated, Iterable, List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.integrate import quad

from .errors import HolderViolationError
from .util import write_csv

QUAD_EPSABS = 1e-12
QUAD_LIMIT = 500
# Gaussian integrals run over mean +- GAUSS_TAIL standard deviations.
GAUSS_TAIL = 14.0
HOLDER_TOLERANCE = 1e-10


class Gaussian(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["gaussian"] = "gaussian"
    sigma: float = Field(..., ge=0, description="Standard deviation")
    mean: float = Field(0.0, description="Offset of the field error")

    @property
    def scale(self) -> float:
        return self.sigma


class Uniform(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["uniform"] = "uniform"
    a: float = Field(..., ge=0, description="Half width of the support [mean - a, mean + a]")
    mean: float = Field(0.0, description="Offset of the field error")

    @property
    def scale(self) -> float:
        return self.a


class Discrete(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["discrete"] = "discrete"
    points: Tuple[float, ...]
    weights: Tuple[float, ...]

    @model_validator(mode="after")
    def _normalized(self) -> "Discrete":
        if len(self.points) != len(self.weights) or not self.points:
            raise ValueError("discrete distribution needs matching, non-empty points and weights")
        if min(self.weights) < 0 or abs(math.fsum(self.weights) - 1) > 1e-12:
            raise ValueError("discrete weights must be non-negative and sum to 1")
        return self

    @property
    def scale(self) -> float:
        return max(abs(p) for p in self.points)


Distribution = Annotated[Union[Gaussian, Uniform, Discrete], Field(discriminator="kind")]


class ControlScope(str, Enum):
    LOCAL = "local"
    GLOBAL = "global"


class GateNoiseSpec(BaseModel):
    """A noisy control field acting on ``n`` qubits."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Qubit count")
    strength: float = Field(..., description="Rotation strength tau_r * g")
    distribution: Distribution
    scope: ControlScope = ControlScope.LOCAL
    squared: bool = Field(False, description="Use cos^2 moments")

    @property
    def scaled_width(self) -> float:
        """``tau_r g`` times the distribution scale (the CSV ``a`` column)."""
        return self.strength * self.distribution.scale


class GateFidelityResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    f_local: float
    f_global: float
    error_estimate: float = Field(0.0, description="Quadrature error bound carried into both fidelities")

    @property
    def holder_gap(self) -> float:
        """``F_global - F_local``; non-negative when the Hölder ordering holds."""
        return self.f_global - self.f_local


class HolderReport(BaseModel):
    checked: int
    max_violation: float = Field(..., description="max(F_local - F_global), <= 0 when all pass")
    worst: Optional[dict] = Field(None, description="Spec and fidelities at the max violation")


def cosine_power_moment(spec: GateNoiseSpec, power: int, epsabs: float = QUAD_EPSABS) -> Tuple[float, float]:
    """``int cos(s w)^power p(w) dw`` by adaptive quadrature.

    Returns:
        Tuple of (value, absolute error estimate)
    """
    s = spec.strength
    if spec.squared:
        power *= 2
    dist = spec.distribution

    if isinstance(dist, Discrete):
        value = math.fsum(w * math.cos(s * p) ** power for p, w in zip(dist.points, dist.weights))
        return value, 0.0
    if dist.scale == 0 or s == 0:
        return math.cos(s * dist.mean) ** power, 0.0

    mean = dist.mean
    if isinstance(dist, Gaussian):
        norm = 1.0 / math.sqrt(2 * math.pi)
        sigma = dist.sigma

        def integrand(x: float) -> float:
            return norm * math.exp(-0.5 * x * x) * math.cos(s * (mean + sigma * x)) ** power

        value, error = quad(integrand, -GAUSS_TAIL, GAUSS_TAIL, epsabs=epsabs, epsrel=0, limit=QUAD_LIMIT)
        return value, error

    half_width = dist.a

    def uniform(w: float) -> float:
        return math.cos(s * w) ** power / (2 * half_width)

    value, error = quad(uniform, mean - half_width, mean + half_width, epsabs=epsabs, epsrel=0, limit=QUAD_LIMIT)
    return value, error


def fidelity_local(spec: GateNoiseSpec) -> float:
    moment, _ = cosine_power_moment(spec, 1)
    return moment ** spec.n


def fidelity_global(spec: GateNoiseSpec) -> float:
    value, _ = cosine_power_moment(spec, spec.n)
    return value


def fidelity(spec: GateNoiseSpec) -> float:
    """Fidelity for the spec's own control scope."""
    if spec.scope is ControlScope.GLOBAL:
        return fidelity_global(spec)
    return fidelity_local(spec)


def evaluate(spec: GateNoiseSpec) -> GateFidelityResult:
    """Both fidelities with a combined quadrature error estimate."""
    moment, moment_error = cosine_power_moment(spec, 1)
    f_global, global_error = cosine_power_moment(spec, spec.n)
    local_error = spec.n * abs(moment) ** (spec.n - 1) * moment_error
    return GateFidelityResult(
        f_local=moment ** spec.n,
        f_global=f_global,
        error_estimate=max(local_error, global_error),
    )


def characteristic_cosine(distribution: Union[Gaussian, Uniform, Discrete], u: float) -> float:
    """``E[cos(u w)]`` in closed form."""
    if isinstance(distribution, Discrete):
        return math.fsum(w * math.cos(u * p) for p, w in zip(distribution.points, distribution.weights))
    if isinstance(distribution, Gaussian):
        return math.cos(u * distribution.mean) * math.exp(-0.5 * (u * distribution.sigma) ** 2)
    width = u * distribution.a
    sinc = 1.0 if width == 0 else math.sin(width) / width
    return math.cos(u * distribution.mean) * sinc


def power_reduction_moment(spec: GateNoiseSpec, power: int) -> float:
    """``E[cos(s w)^power]`` from ``cos^p x = 2^-p sum_j C(p,j) cos((p-2j) x)``."""
    if spec.squared:
        power *= 2
    s = spec.strength
    terms = (
        math.comb(power, j) * characteristic_cosine(spec.distribution, (power - 2 * j) * s)
        for j in range(power + 1)
    )
    return math.fsum(terms) / 2 ** power


def closed_form(spec: GateNoiseSpec) -> GateFidelityResult:
    """Quadrature-free fidelities."""
    return GateFidelityResult(
        f_local=power_reduction_moment(spec, 1) ** spec.n,
        f_global=power_reduction_moment(spec, spec.n),
    )


def holder_check(specs: Iterable[GateNoiseSpec], tolerance: float = HOLDER_TOLERANCE) -> HolderReport:
    """Check ``F_local <= F_global`` over a grid of specs.

    Raises:
        HolderViolationError: some spec violates the ordering by more than ``tolerance``
    """
    checked = 0
    max_violation = -math.inf
    worst = None
    for spec in specs:
        result = evaluate(spec)
        checked += 1
        violation = result.f_local - result.f_global
        if violation > max_violation:
            max_violation = violation
            worst = {"spec": spec.model_dump(mode="json"), **result.model_dump()}
    if checked == 0:
        max_violation = 0.0
    report = HolderReport(checked=checked, max_violation=max_violation, worst=worst)
    if max_violation > tolerance:
        raise HolderViolationError(
            f"F_local exceeds F_global by {max_violation:.3e} (tolerance {tolerance:.0e})",
            details=report.model_dump(),
        )
    return report


def fidelity_sweep(
    distribution: str,
    widths: Sequence[float],
    n: int,
    strength: float = 1.0,
    squared: bool = False,
) -> List[Tuple[float, GateFidelityResult]]:
    """Fidelities against ``a = tau_r g * scale`` for a zero-mean distribution family."""
    rows = []
    for a in widths:
        scale = a / strength
        if distribution == "gaussian":
            dist: Union[Gaussian, Uniform, Discrete] = Gaussian(sigma=scale)
        elif distribution == "uniform":
            dist = Uniform(a=scale)
        else:
            raise ValueError(f"sweeps support gaussian and uniform distributions, got {distribution!r}")
        spec = GateNoiseSpec(n=n, strength=strength, distribution=dist, squared=squared)
        rows.append((float(a), evaluate(spec)))
    return rows


def write_fidelity_csv(path: Union[str, Path], rows: Sequence[Tuple[float, GateFidelityResult]]) -> int:
    """``a,f_local,f_global`` rows."""
    return write_csv(path, ("a", "f_local", "f_global"), ((a, r.f_local, r.f_global) for a, r in rows))
