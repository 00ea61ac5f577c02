# SPDX-FileCopyrightText: 2026-present corrperf contributors
#
# SPDX-License-Identifier: MIT
"""Spin-bath dephasing models.

Spins use Z eigenvalues +1 (bit 0) and -1 (bit 1). A bath of N spins with k
spins down has magnetization ``b_k = N - 2k`` and internal energy
``Omega * b_k``. The dense layout puts the n system qubits first, then the
bath spins; for local topologies bath ``m`` occupies the ``m``-th block.

Hamiltonians, all diagonal::

    H = sum_m sum_i g_im s_m z_i  +  Omega * sum_i z_i  +  g' * sum_{j<k} s_j s_k * B

with ``z_i`` ranging over the spins attached to qubit ``m`` (its own bath for
local topologies, the shared bath otherwise) and ``B`` the total bath
magnetization.
"""
import math
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.stats import binom

from .errors import DimensionError, ModelError
from .pauli import CodeParams

# Largest n + total bath spins for dense Hamiltonians and propagators.
DENSE_SPIN_CAP = 14


def coupling_scale(table: Sequence[Sequence[float]]) -> float:
    """Reference coupling of a g_im table: the common value, or max |g_im| when the table is asymmetric.

    Dimensionless times ``g * tau`` are measured in this scale on every path.
    """
    values = np.asarray([v for row in table for v in row], dtype=np.float64)
    if values.size == 0:
        return 0.0
    if np.all(values == values.flat[0]):
        return float(values.flat[0])
    return float(np.max(np.abs(values)))


class Topology(str, Enum):
    PER_QUBIT_LOCAL = "per-qubit-local"
    SHARED_NONLOCAL = "shared-nonlocal"
    LOCAL_SPLIT = "local-split"


class InteractionFamily(str, Enum):
    TWO_BODY = "dephasing-2body"
    THREE_BODY = "dephasing-3body"


class BathSpec(BaseModel):
    """Bath topology, size, temperature and system-bath couplings."""

    model_config = ConfigDict(frozen=True)

    topology: Topology = Field(..., description="per-qubit-local, shared-nonlocal or local-split")
    N: int = Field(..., description="Bath spins: total for shared and local-split, per qubit for per-qubit-local")
    omega: float = Field(1.0, description="Bath internal frequency Omega")
    beta: float = Field(..., description="Inverse temperature")
    g: float = Field(1.0, description="Coupling scale of the g*tau axis; the reference scale of ``couplings`` when given")
    couplings: Optional[Tuple[Tuple[float, ...], ...]] = Field(
        None, description="Per-pair table g_im, one row per qubit, one column per attached bath spin"
    )

    @model_validator(mode="before")
    @classmethod
    def _derive_g(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("couplings") is not None and data.get("g") is None:
            data = {**data, "g": coupling_scale(data["couplings"])}
        return data

    @model_validator(mode="after")
    def _check(self) -> "BathSpec":
        if self.couplings is not None:
            scale = coupling_scale(self.couplings)
            if self.g != scale:
                raise ModelError(f"coupling g={self.g:g} disagrees with the table's reference scale {scale:g}")
        if self.N < 0:
            raise ModelError(f"bath size must be >= 0, got N={self.N}")
        if self.beta < 0:
            raise ModelError(f"inverse temperature must be >= 0, got beta={self.beta}")
        return self

    @classmethod
    def from_beta_omega(cls, topology: Topology, N: int, beta_omega: float, **kwargs: Any) -> "BathSpec":
        """Bath with Omega = 1, so that beta carries the dimensionless product."""
        return cls(topology=topology, N=N, omega=1.0, beta=beta_omega, **kwargs)

    @property
    def beta_omega(self) -> float:
        return self.beta * self.omega


class NoiseModel(BaseModel):
    """A code sitting in a spin bath, with optional three-body coupling ``g'``."""

    model_config = ConfigDict(frozen=True)

    code: CodeParams
    bath: BathSpec
    g_prime: float = Field(0.0, description="Three-body coupling")
    family: Optional[InteractionFamily] = Field(None, description="Derived from g_prime when omitted")

    @model_validator(mode="before")
    @classmethod
    def _derive_family(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("family") is None:
            family = InteractionFamily.TWO_BODY if not data.get("g_prime") else InteractionFamily.THREE_BODY
            data = {**data, "family": family}
        return data

    @model_validator(mode="after")
    def _check(self) -> "NoiseModel":
        expected = InteractionFamily.TWO_BODY if self.g_prime == 0 else InteractionFamily.THREE_BODY
        if self.family is not expected:
            raise ModelError(f"family {self.family.value} inconsistent with g'={self.g_prime}")
        if self.bath.topology is Topology.LOCAL_SPLIT and self.bath.N % self.code.n:
            raise ModelError(f"local-split bath of {self.bath.N} spins not divisible among {self.code.n} qubits")
        table = self.bath.couplings
        if table is not None:
            shape = (len(table), len(table[0]) if table else 0)
            if shape != (self.code.n, self.spins_per_group) or any(len(row) != shape[1] for row in table):
                raise ModelError(
                    f"coupling table must be {self.code.n} x {self.spins_per_group}, got {shape}"
                )
        return self

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def is_local(self) -> bool:
        return self.bath.topology is not Topology.SHARED_NONLOCAL

    @property
    def spins_per_group(self) -> int:
        """Bath spins coupled to each qubit."""
        if self.bath.topology is Topology.LOCAL_SPLIT:
            return self.bath.N // self.code.n
        return self.bath.N

    @property
    def bath_groups(self) -> int:
        """Number of independent baths."""
        return self.code.n if self.is_local else 1

    @property
    def total_bath_spins(self) -> int:
        return self.bath_groups * self.spins_per_group

    @property
    def is_symmetric(self) -> bool:
        table = self.bath.couplings
        if table is None:
            return True
        values = np.asarray(table, dtype=np.float64)
        return values.size == 0 or bool(np.all(values == values.flat[0]))

    @property
    def tag(self) -> str:
        bath = self.bath
        parts = [self.code.tag, bath.topology.value, f"N={bath.N}", f"bO={bath.beta_omega:g}"]
        if self.g_prime:
            parts.append(f"g'={self.g_prime:g}")
        if not self.is_symmetric:
            parts.append("asym")
        return " ".join(parts)

    def coupling_matrix(self) -> np.ndarray:
        """Dense ``n x total_bath_spins`` coupling array in the dense layout."""
        n, per = self.code.n, self.spins_per_group
        table = (
            np.full((n, per), self.bath.g, dtype=np.float64)
            if self.bath.couplings is None
            else np.asarray(self.bath.couplings, dtype=np.float64).reshape(n, per)
        )
        if not self.is_local:
            return table
        full = np.zeros((n, self.total_bath_spins))
        for m in range(n):
            full[m, m * per:(m + 1) * per] = table[m]
        return full

    def with_omega(self, omega: float) -> "NoiseModel":
        """Same model with a different bath frequency (beta rescaled to keep beta*Omega)."""
        bath = self.bath.model_copy(update={"omega": omega, "beta": self.bath.beta_omega / omega})
        return self.model_copy(update={"bath": bath})


class ThermalState(BaseModel):
    """Magnetization-sector weights ``P_k`` of a thermal spin bath (degeneracy folded in)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    N: int = Field(..., ge=0)
    weights: np.ndarray = Field(..., description="P_k, k = number of down spins")
    log_partition: float = Field(..., description="log Z, Z = (2 cosh(beta Omega))^N")

    @property
    def partition(self) -> float:
        return math.exp(self.log_partition)

    @property
    def magnetizations(self) -> np.ndarray:
        """``b_k = N - 2k``."""
        return self.N - 2.0 * np.arange(self.N + 1)

    def characteristic(self, theta: np.ndarray) -> np.ndarray:
        """``sum_k P_k exp(-i theta b_k)``, elementwise in ``theta``."""
        theta = np.asarray(theta, dtype=np.float64)
        return np.exp(-1j * theta[..., None] * self.magnetizations) @ self.weights

    def second_moment(self) -> float:
        """``<B^2>`` of the total magnetization."""
        return float(self.weights @ self.magnetizations ** 2)


def build_model(config: Dict[str, Any]) -> NoiseModel:
    """Resolve a model description.

    Accepts ``code`` ({n, k, d} or {n, t} for a synthetic code), ``topology``,
    ``N``, ``beta_omega`` (or ``beta`` and ``omega``), ``g``, ``gprime_ratio``
    or ``g_prime``, and an optional ``couplings`` table. ``g`` defaults to 1,
    or to the table's reference scale; ``gprime_ratio`` is relative to it.
    """
    cfg = dict(config)
    code = cfg.pop("code")
    if not isinstance(code, CodeParams):
        code = dict(code)
        if "t" in code and "d" not in code:
            code = CodeParams.synthetic_code(code["n"], code["t"])
        else:
            code = CodeParams(**code)
    try:
        topology = Topology(cfg.pop("topology"))
    except ValueError as exc:
        raise ModelError(str(exc)) from exc
    g = cfg.pop("g", None)
    if "beta_omega" in cfg:
        omega = float(cfg.pop("omega", 1.0))
        beta = float(cfg.pop("beta_omega")) / omega
    else:
        omega = float(cfg.pop("omega", 1.0))
        beta = float(cfg.pop("beta"))
    couplings = cfg.pop("couplings", None)
    if couplings is not None:
        couplings = tuple(tuple(float(v) for v in row) for row in couplings)
    if g is None:
        g = 1.0 if couplings is None else coupling_scale(couplings)
    g = float(g)
    if "gprime_ratio" in cfg:
        g_prime = float(cfg.pop("gprime_ratio")) * g
    else:
        g_prime = float(cfg.pop("g_prime", 0.0))
    N = int(cfg.pop("N"))
    if cfg:
        raise ModelError(f"unknown model keys: {sorted(cfg)}")
    bath = BathSpec(topology=topology, N=N, omega=omega, beta=beta, g=g, couplings=couplings)
    return NoiseModel(code=code, bath=bath, g_prime=g_prime)


def thermal_state(bath: BathSpec, N: Optional[int] = None) -> ThermalState:
    """Sector weights ``P_k = C(N,k) exp(-beta Omega (N - 2k)) / Z``.

    ``N`` overrides the bath size (a local-split bath hands each qubit N/n spins).
    """
    size = bath.N if N is None else N
    x = bath.beta_omega
    k = np.arange(size + 1)
    if math.isinf(x):
        weights = (k == size).astype(np.float64)
    else:
        # probability of a spin pointing down is e^{x} / (2 cosh x)
        weights = binom.pmf(k, size, 1.0 / (1.0 + math.exp(-2.0 * x)))
    log_partition = size * float(np.logaddexp(x, -x)) if not math.isinf(x) else math.inf
    return ThermalState(N=size, weights=np.asarray(weights, dtype=np.float64), log_partition=log_partition)


def model_thermal_state(model: NoiseModel) -> ThermalState:
    """Thermal sectors of one bath group of ``model``."""
    return thermal_state(model.bath, model.spins_per_group)


@lru_cache(maxsize=None)
def spin_values(count: int) -> np.ndarray:
    """``(2^count, count)`` table of +-1 spin values, spin 0 most significant."""
    states = np.arange(1 << count, dtype=np.int64)[:, None]
    shifts = np.arange(count - 1, -1, -1, dtype=np.int64)[None, :]
    table = (1 - 2 * ((states >> shifts) & 1)).astype(np.float64)
    table.flags.writeable = False
    return table


def pair_count(n: int) -> np.ndarray:
    """``sum_{j<k} s_j s_k = (m^2 - n) / 2`` for every system basis state."""
    m = spin_values(n).sum(axis=1)
    return (m ** 2 - n) / 2.0


def bath_basis_weights(model: NoiseModel) -> np.ndarray:
    """Thermal probabilities ``lambda_i`` of every bath computational basis state."""
    spins = model.total_bath_spins
    z = spin_values(spins).sum(axis=1) if spins else np.zeros(1)
    x = model.bath.beta_omega
    if math.isinf(x):
        return (z == -spins).astype(np.float64)
    return np.exp(-x * z - spins * float(np.logaddexp(x, -x)))


def _check_dense(model: NoiseModel) -> None:
    total = model.n + model.total_bath_spins
    if total > DENSE_SPIN_CAP:
        raise DimensionError(f"dense model needs {total} spins, cap is {DENSE_SPIN_CAP}")


def hamiltonian_diagonal(model: NoiseModel) -> np.ndarray:
    """Diagonal of the model Hamiltonian in the dense layout."""
    _check_dense(model)
    s = spin_values(model.n)
    spins = model.total_bath_spins
    z = spin_values(spins) if spins else np.zeros((1, 0))
    bath_mag = z.sum(axis=1)
    coupling = s @ model.coupling_matrix() @ z.T
    internal = model.bath.omega * bath_mag[None, :]
    three_body = model.g_prime * pair_count(model.n)[:, None] * bath_mag[None, :]
    return (coupling + internal + three_body).reshape(-1)


def dense_hamiltonian(model: NoiseModel) -> np.ndarray:
    """The model Hamiltonian as a dense Hermitian matrix."""
    return np.diag(hamiltonian_diagonal(model)).astype(np.complex128)


def catalog(
    code: CodeParams, N: int, beta_omega: float, g_prime_values: Sequence[float] = (0.0,)
) -> List[NoiseModel]:
    """Every topology crossed with ``g_prime_values`` (local-split only when ``n | N``)."""
    models = []
    for topology in Topology:
        if topology is Topology.LOCAL_SPLIT and N % code.n:
            continue
        for g_prime in g_prime_values:
            bath = BathSpec.from_beta_omega(topology, N, beta_omega)
            models.append(NoiseModel(code=code, bath=bath, g_prime=g_prime))
    return models
