# SPDX-FileCopyrightText: 2026-present corrperf contributors
#
# SPDX-License-Identifier: MIT
"""Linear maps in the tensor-Pauli basis.

A map ``N(rho) = sum_a c_a E_a rho E_a^dag`` is expanded as
``N(rho) = sum_{p,q} e_{p,q} S_p rho S_q`` with
``e_{p,q} = sum_a c_a a_{a,p} conj(a_{a,q})`` and ``a_{a,p} = Tr(S_p E_a) / 2^n``.
Chi indices are :attr:`PauliString.key` values.
"""
import math
from functools import lru_cache
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.linalg import hadamard

from .errors import DimensionError
from .pauli import (
    CodeParams,
    CorrectionMode,
    PauliString,
    correctable_keys,
    dense_matrix,
    reversal_table,
)
from .util import popcount, real_or_raise, write_csv

# Largest qubit count for which the full 4^n x 4^n chi array is stored.
CHI_DENSE_QUBIT_CAP = 6
# Largest qubit count for Kraus operators (2^n x 2^n) handled here.
KRAUS_QUBIT_CAP = 7


class KrausSet(BaseModel):
    """Operators ``E_a`` with optional real weights ``c_a`` (Hermitian, non-CP maps)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(..., ge=1, description="System qubit count")
    operators: Tuple[np.ndarray, ...] = Field(..., description="Complex 2^n x 2^n operators")
    weights: Optional[Tuple[float, ...]] = Field(None, description="Real coefficients c_a; all 1 when omitted")

    @model_validator(mode="after")
    def _shapes(self) -> "KrausSet":
        dim = 1 << self.n
        for op in self.operators:
            if op.shape != (dim, dim):
                raise DimensionError(f"Kraus operator of shape {op.shape} on {self.n} qubits")
        if self.weights is not None and len(self.weights) != len(self.operators):
            raise DimensionError(f"{len(self.weights)} weights for {len(self.operators)} operators")
        return self

    @classmethod
    def of(cls, operators: Sequence[np.ndarray], weights: Optional[Sequence[float]] = None) -> "KrausSet":
        ops = tuple(np.asarray(op, dtype=np.complex128) for op in operators)
        if not ops:
            raise DimensionError("empty Kraus set")
        n = int(round(math.log2(ops[0].shape[0])))
        return cls(n=n, operators=ops, weights=None if weights is None else tuple(float(w) for w in weights))

    @property
    def coefficients(self) -> np.ndarray:
        if self.weights is None:
            return np.ones(len(self.operators))
        return np.asarray(self.weights, dtype=np.float64)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """``sum_a c_a E_a rho E_a^dag``."""
        out = np.zeros_like(rho, dtype=np.complex128)
        for c, op in zip(self.coefficients, self.operators):
            out += c * (op @ rho @ op.conj().T)
        return out

    def completeness_defect(self) -> float:
        """``max |sum_a c_a E_a^dag E_a - I|``; zero for trace-preserving channels."""
        total = sum(c * (op.conj().T @ op) for c, op in zip(self.coefficients, self.operators))
        return float(np.max(np.abs(total - np.eye(1 << self.n))))


class ChiMatrix(BaseModel):
    """Pauli-basis coefficients of a linear map.

    Above :data:`CHI_DENSE_QUBIT_CAP` only the diagonal is held (``entries`` is None).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(..., ge=1, description="Qubit count")
    entries: Optional[np.ndarray] = Field(None, description="Full 4^n x 4^n array, or None when diagonal-only")
    diagonal: np.ndarray = Field(..., description="e_{p,p} for every key p")

    @model_validator(mode="after")
    def _shapes(self) -> "ChiMatrix":
        size = 4 ** self.n
        if self.diagonal.shape != (size,):
            raise DimensionError(f"chi diagonal of shape {self.diagonal.shape} for n={self.n}")
        if self.entries is not None and self.entries.shape != (size, size):
            raise DimensionError(f"chi entries of shape {self.entries.shape} for n={self.n}")
        return self

    @classmethod
    def from_entries(cls, entries: np.ndarray) -> "ChiMatrix":
        n = int(round(math.log(entries.shape[0], 4)))
        return cls(n=n, entries=entries, diagonal=np.diag(entries).copy())

    @property
    def is_dense(self) -> bool:
        return self.entries is not None

    def dense(self) -> np.ndarray:
        if self.entries is None:
            raise DimensionError(f"chi on {self.n} qubits holds only its diagonal")
        return self.entries

    def entry(self, p: PauliString, q: PauliString) -> complex:
        if p.key == q.key:
            return complex(self.diagonal[p.key])
        return complex(self.dense()[p.key, q.key])


@lru_cache(maxsize=None)
def _support_by_key(n: int) -> np.ndarray:
    keys = np.arange(4 ** n, dtype=np.int64)
    mask = (1 << n) - 1
    return (keys & mask) | (keys >> n)


def pauli_coefficients(op: np.ndarray, n: int) -> np.ndarray:
    """``Tr(S_p op) / 2^n`` for every key ``p``.

    For a fixed X part the trace is a Walsh-Hadamard transform of the
    shifted diagonal ``op[c, c ^ X]``.
    """
    dim = 1 << n
    rows = np.arange(dim, dtype=np.int64)
    rev = reversal_table(n)
    walsh = hadamard(dim).astype(np.float64)
    masks = np.arange(dim, dtype=np.int64)
    out = np.empty(4 ** n, dtype=np.complex128)
    for x_mask in range(dim):
        shifted = op[rows, rows ^ rev[x_mask]]
        transformed = walsh @ shifted
        phase = np.asarray([1, 1j, -1, -1j])[popcount(masks & x_mask) % 4]
        out[(masks << n) | x_mask] = phase * transformed[rev[masks]] / dim
    return out


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise DimensionError(f"{what} capped at {cap} qubits, got {n}")


def chi_from_kraus(kraus: KrausSet, diagonal_only: Optional[bool] = None) -> ChiMatrix:
    """Chi matrix of a (weighted) Kraus set.

    ``diagonal_only`` defaults to True above :data:`CHI_DENSE_QUBIT_CAP`.
    """
    _check_cap(kraus.n, KRAUS_QUBIT_CAP, "chi_from_kraus")
    if diagonal_only is None:
        diagonal_only = kraus.n > CHI_DENSE_QUBIT_CAP
    if not diagonal_only:
        _check_cap(kraus.n, CHI_DENSE_QUBIT_CAP, "dense chi")
    size = 4 ** kraus.n
    diagonal = np.zeros(size, dtype=np.complex128)
    entries = None if diagonal_only else np.zeros((size, size), dtype=np.complex128)
    # fixed accumulation order: operators, then keys
    for c, op in zip(kraus.coefficients, kraus.operators):
        a = pauli_coefficients(op, kraus.n)
        diagonal += c * (a * a.conj())
        if entries is not None:
            entries += c * np.outer(a, a.conj())
    if entries is not None:
        diagonal = np.diag(entries).copy()
    return ChiMatrix(n=kraus.n, entries=entries, diagonal=diagonal)


def apply_chi(chi: ChiMatrix, rho: np.ndarray) -> np.ndarray:
    """``sum_{p,q} e_{p,q} S_p rho S_q`` (reconstruction of the map)."""
    entries = chi.dense()
    basis = [dense_matrix(PauliString.from_key(chi.n, key)) for key in range(4 ** chi.n)]
    out = np.zeros_like(rho, dtype=np.complex128)
    for p, q in zip(*np.nonzero(entries)):
        out += entries[p, q] * (basis[p] @ rho @ basis[q])
    return out


def submap(chi: ChiMatrix, w: int) -> ChiMatrix:
    """Entries whose per-site array ``(p_i + q_i)`` has exactly ``w`` non-zero positions."""
    if not 0 <= w <= chi.n:
        raise DimensionError(f"submap level {w} outside 0..{chi.n}")
    support = _support_by_key(chi.n)
    if chi.entries is None:
        keep = popcount(support) == w
        return ChiMatrix(n=chi.n, entries=None, diagonal=np.where(keep, chi.diagonal, 0))
    keep = popcount(support[:, None] | support[None, :]) == w
    return ChiMatrix.from_entries(np.where(keep, chi.entries, 0))


def _correctable_mask(chi: ChiMatrix, code: CodeParams, mode: CorrectionMode) -> np.ndarray:
    n, t = chi.n, code.t
    keys = np.arange(4 ** n, dtype=np.int64)
    low = (1 << n) - 1
    x_part, z_part = keys & low, keys >> n
    if chi.entries is None:
        x_pair, z_pair = x_part, z_part
    else:
        x_pair = x_part[:, None] | x_part[None, :]
        z_pair = z_part[:, None] | z_part[None, :]
    if CorrectionMode(mode) is CorrectionMode.TOTAL_WEIGHT:
        return popcount(x_pair | z_pair) <= t
    return (popcount(x_pair) <= t) & (popcount(z_pair) <= t)


def correctable_split(
    chi: ChiMatrix, code: CodeParams, mode: CorrectionMode = CorrectionMode.TOTAL_WEIGHT
) -> Tuple[ChiMatrix, ChiMatrix]:
    """``(N_c, N_ic)``: the correctable part and the rest; they sum to ``chi`` exactly."""
    if chi.n != code.n:
        raise DimensionError(f"chi on {chi.n} qubits, code of length {code.n}")
    keep = _correctable_mask(chi, code, mode)
    if chi.entries is None:
        return (
            ChiMatrix(n=chi.n, diagonal=np.where(keep, chi.diagonal, 0)),
            ChiMatrix(n=chi.n, diagonal=np.where(keep, 0, chi.diagonal)),
        )
    return (
        ChiMatrix.from_entries(np.where(keep, chi.entries, 0)),
        ChiMatrix.from_entries(np.where(keep, 0, chi.entries)),
    )


def performance_from_chi(
    chi: ChiMatrix, code: CodeParams, mode: CorrectionMode = CorrectionMode.TOTAL_WEIGHT
) -> float:
    """Diagonal chi weight on the correctable strings."""
    if chi.n != code.n:
        raise DimensionError(f"chi on {chi.n} qubits, code of length {code.n}")
    total = complex(np.sum(chi.diagonal[correctable_keys(code, mode)]))
    return real_or_raise(total, "performance_from_chi")


def independent_closed_form(n: int, t: int, p: float) -> float:
    """``sum_{c=0}^{t} C(n, c) (1-p)^(n-c) p^c``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"error probability {p} outside [0, 1]")
    return math.fsum(math.comb(n, c) * (1 - p) ** (n - c) * p ** c for c in range(min(t, n) + 1))


def tensor_product(chis: Sequence[ChiMatrix]) -> ChiMatrix:
    """Chi of ``N_1 (x) ... (x) N_m``; the first factor holds the lowest qubits."""
    n = sum(chi.n for chi in chis)
    dense = n <= CHI_DENSE_QUBIT_CAP and all(chi.is_dense for chi in chis)
    keys = np.arange(4 ** n, dtype=np.int64)
    low = (1 << n) - 1
    x_all, z_all = keys & low, keys >> n
    diagonal = np.ones(4 ** n, dtype=np.complex128)
    entries = np.ones((4 ** n, 4 ** n), dtype=np.complex128) if dense else None
    offset = 0
    for chi in chis:
        sub_low = (1 << chi.n) - 1
        sub = ((z_all >> offset) & sub_low) << chi.n | ((x_all >> offset) & sub_low)
        diagonal *= chi.diagonal[sub]
        if entries is not None:
            entries *= chi.dense()[sub[:, None], sub[None, :]]
        offset += chi.n
    return ChiMatrix(n=n, entries=entries, diagonal=diagonal)


def dephasing_kraus(p: float) -> KrausSet:
    """Single-qubit phase flip with probability ``p``."""
    return KrausSet.of([math.sqrt(1 - p) * np.eye(2), math.sqrt(p) * np.diag([1.0, -1.0])])


def depolarizing_kraus(p: float) -> KrausSet:
    """``(1-p) rho + p eps(rho)`` with ``eps`` an equal mixture of X, Y and Z."""
    r = math.sqrt(p / 3)
    return KrausSet.of(
        [
            math.sqrt(1 - p) * np.eye(2),
            r * np.array([[0, 1], [1, 0]]),
            r * np.array([[0, -1j], [1j, 0]]),
            r * np.diag([1.0, -1.0]),
        ]
    )


def amplitude_damping_kraus(gamma: float) -> KrausSet:
    return KrausSet.of(
        [
            np.array([[1, 0], [0, math.sqrt(1 - gamma)]]),
            np.array([[0, math.sqrt(gamma)], [0, 0]]),
        ]
    )


def product_kraus(sets: Sequence[KrausSet]) -> KrausSet:
    """Kraus set of the tensor product channel (first set on qubit 0)."""
    ops: List[np.ndarray] = [np.eye(1, dtype=np.complex128)]
    coeffs: List[float] = [1.0]
    for kraus in sets:
        ops = [np.kron(a, b) for a in ops for b in kraus.operators]
        coeffs = [ca * cb for ca in coeffs for cb in kraus.coefficients]
    weighted = any(k.weights is not None for k in sets)
    return KrausSet.of(ops, coeffs if weighted else None)


def chi_diagonal_csv(chi: ChiMatrix, path: Union[str, Path]) -> int:
    """Export ``pauli_string,e_pp_real`` rows in key order."""
    rows = (
        (PauliString.from_key(chi.n, key).label, float(np.real(chi.diagonal[key])))
        for key in range(4 ** chi.n)
    )
    return write_csv(path, ("pauli_string", "e_pp_real"), rows)
