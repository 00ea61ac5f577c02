# SPDX-FileCopyrightText: 2026-present corrperf contributors
#
# SPDX-License-Identifier: MIT
"""Tensor Pauli strings in bit-pair (x_mask, z_mask) form.

Bit ``j`` of each mask refers to qubit ``j``, the ``j``-th character of the
label and the ``j``-th Kronecker factor (qubit 0 is the most significant
index of a dense matrix). A string is ``i^{|x&z|} X^x Z^z``, so both masks set
on a site means ``Y``.
"""
from enum import Enum
from functools import lru_cache
from itertools import combinations, product
from typing import Any, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import DimensionError, ModelError
from .util import popcount

# Largest qubit count for which dense_matrix materializes a 2^n x 2^n array.
DENSE_QUBIT_CAP = 10

_LABEL_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LABEL = {bits: label for label, bits in _LABEL_BITS.items()}
_PHASES = (1 + 0j, 1j, -1 + 0j, -1j)


class CorrectionMode(str, Enum):
    """How the correctable index set reads a weight bound ``t``."""

    TOTAL_WEIGHT = "total-weight"
    CSS_SPLIT = "css-split"


class PauliString(BaseModel):
    """An n-qubit tensor Pauli operator."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Number of qubits")
    x_mask: int = Field(0, ge=0, description="Sites carrying an X component")
    z_mask: int = Field(0, ge=0, description="Sites carrying a Z component")

    @model_validator(mode="after")
    def _masks_fit(self) -> "PauliString":
        if self.x_mask >> self.n or self.z_mask >> self.n:
            raise ValueError(f"masks exceed {self.n} qubits")
        return self

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n=n)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse a label such as ``"IZXYI"``."""
        label = label.strip().upper()
        if not label:
            raise ValueError("empty Pauli label")
        x_mask = z_mask = 0
        for j, char in enumerate(label):
            if char not in _LABEL_BITS:
                raise ValueError(f"unknown Pauli factor {char!r} in {label!r}")
            x_bit, z_bit = _LABEL_BITS[char]
            x_mask |= x_bit << j
            z_mask |= z_bit << j
        return cls(n=len(label), x_mask=x_mask, z_mask=z_mask)

    @classmethod
    def from_key(cls, n: int, key: int) -> "PauliString":
        """Inverse of :attr:`key`."""
        return cls(n=n, x_mask=key & ((1 << n) - 1), z_mask=key >> n)

    @property
    def label(self) -> str:
        return "".join(
            _BITS_LABEL[((self.x_mask >> j) & 1, (self.z_mask >> j) & 1)] for j in range(self.n)
        )

    @property
    def key(self) -> int:
        """Ordering integer ``(z_mask << n) | x_mask``; also the chi-matrix index."""
        return (self.z_mask << self.n) | self.x_mask

    @property
    def support(self) -> int:
        return self.x_mask | self.z_mask

    @property
    def x_weight(self) -> int:
        return popcount(self.x_mask)

    @property
    def z_weight(self) -> int:
        return popcount(self.z_mask)

    @property
    def is_diagonal(self) -> bool:
        """True for strings built from I and Z only."""
        return self.x_mask == 0

    def __str__(self) -> str:
        return self.label


class CodeParams(BaseModel):
    """``[n, k, d]`` CSS code parameters with correctable weight ``t``."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Code length")
    k: int = Field(..., ge=0, description="Logical qubits")
    d: int = Field(..., ge=1, description="Distance")
    t: Optional[int] = Field(None, ge=0, description="Correctable weight, floor((d-1)/2) unless synthetic")
    synthetic: bool = Field(False, description="Downsized code with t fixed directly")

    @model_validator(mode="before")
    @classmethod
    def _derive_t(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("t") is None and not data.get("synthetic") and "d" in data:
            data = {**data, "t": (int(data["d"]) - 1) // 2}
        return data

    @model_validator(mode="after")
    def _check(self) -> "CodeParams":
        if self.synthetic:
            if self.t is None or self.t > self.n:
                raise ModelError(f"synthetic code needs 0 <= t <= n, got t={self.t}, n={self.n}")
            return self
        derived = (self.d - 1) // 2
        if self.t != derived:
            raise ModelError(f"t={self.t} disagrees with floor((d-1)/2)={derived}")
        if self.k >= self.n:
            raise ModelError(f"need k < n, got k={self.k}, n={self.n}")
        if self.d > self.n:
            raise ModelError(f"need d <= n, got d={self.d}, n={self.n}")
        return self

    @classmethod
    def synthetic_code(cls, n: int, t: int) -> "CodeParams":
        """A stand-in code of length ``n`` correcting weight ``t`` (used for small oracle instances)."""
        return cls(n=n, k=0, d=2 * t + 1, t=t, synthetic=True)

    @property
    def tag(self) -> str:
        if self.synthetic:
            return f"n{self.n}t{self.t}"
        return f"[{self.n},{self.k},{self.d}]"


def weight(p: PauliString) -> int:
    """Number of non-identity tensor factors."""
    return popcount(p.x_mask | p.z_mask)


def multiply(p: PauliString, q: PauliString) -> Tuple[PauliString, complex]:
    """Product ``p q`` as ``phase * r``."""
    if p.n != q.n:
        raise DimensionError(f"cannot multiply {p.n}-qubit and {q.n}-qubit strings")
    x_mask = p.x_mask ^ q.x_mask
    z_mask = p.z_mask ^ q.z_mask
    # X^a Z^b X^c Z^d = (-1)^{b.c} X^{a+c} Z^{b+d}, plus the i^{|x&z|} Y factors
    exponent = (
        popcount(p.x_mask & p.z_mask)
        + popcount(q.x_mask & q.z_mask)
        - popcount(x_mask & z_mask)
        + 2 * popcount(p.z_mask & q.x_mask)
    )
    return PauliString(n=p.n, x_mask=x_mask, z_mask=z_mask), _PHASES[exponent % 4]


def reverse_bits(mask: int, n: int) -> int:
    """Map a qubit mask to the matching dense-matrix index mask."""
    out = 0
    for j in range(n):
        if (mask >> j) & 1:
            out |= 1 << (n - 1 - j)
    return out


@lru_cache(maxsize=None)
def reversal_table(n: int) -> np.ndarray:
    """``reversal_table(n)[mask] == reverse_bits(mask, n)`` for every n-bit mask."""
    table = np.array([reverse_bits(m, n) for m in range(1 << n)], dtype=np.int64)
    table.flags.writeable = False
    return table


def dense_matrix(p: PauliString) -> np.ndarray:
    """The 2^n x 2^n matrix of ``p``."""
    if p.n > DENSE_QUBIT_CAP:
        raise DimensionError(f"dense Pauli matrix capped at {DENSE_QUBIT_CAP} qubits, got {p.n}")
    dim = 1 << p.n
    cols = np.arange(dim, dtype=np.int64)
    x_bits = reverse_bits(p.x_mask, p.n)
    z_bits = reverse_bits(p.z_mask, p.n)
    signs = 1 - 2 * (popcount(cols & z_bits) & 1)
    out = np.zeros((dim, dim), dtype=np.complex128)
    out[cols ^ x_bits, cols] = _PHASES[popcount(p.x_mask & p.z_mask) % 4] * signs
    return out


def z_signs(n: int, z_mask: int) -> np.ndarray:
    """Diagonal of a Z-only string: ``prod_{j in z} s_j`` over computational basis states."""
    states = np.arange(1 << n, dtype=np.int64)
    return (1 - 2 * (popcount(states & reverse_bits(z_mask, n)) & 1)).astype(np.float64)


def _masks_up_to(n: int, t: int) -> List[int]:
    masks = []
    for w in range(min(t, n) + 1):
        for sites in combinations(range(n), w):
            masks.append(sum(1 << j for j in sites))
    return masks


def enumerate_correctable(code: CodeParams, mode: CorrectionMode = CorrectionMode.TOTAL_WEIGHT) -> List[PauliString]:
    """Correctable Pauli strings of ``code`` in ascending ``(z_mask, x_mask)`` order."""
    n, t = code.n, code.t
    mode = CorrectionMode(mode)
    keys = []
    if mode is CorrectionMode.TOTAL_WEIGHT:
        for support in _masks_up_to(n, t):
            sites = [j for j in range(n) if (support >> j) & 1]
            # each support site independently X, Y or Z
            for choice in product(range(3), repeat=len(sites)):
                x_mask = z_mask = 0
                for site, c in zip(sites, choice):
                    if c in (0, 1):
                        x_mask |= 1 << site
                    if c in (1, 2):
                        z_mask |= 1 << site
                keys.append((z_mask << n) | x_mask)
    else:
        small = _masks_up_to(n, t)
        keys = [(z_mask << n) | x_mask for z_mask in small for x_mask in small]
    return [PauliString.from_key(n, key) for key in sorted(keys)]


def correctable_keys(code: CodeParams, mode: CorrectionMode = CorrectionMode.TOTAL_WEIGHT) -> np.ndarray:
    """Keys of :func:`enumerate_correctable`, as an int array."""
    return np.array([p.key for p in enumerate_correctable(code, mode)], dtype=np.int64)


def correctable_z_masks(code: CodeParams, mode: CorrectionMode = CorrectionMode.TOTAL_WEIGHT) -> List[int]:
    """Z masks of the correctable strings without X components, in enumeration order."""
    return [p.z_mask for p in enumerate_correctable(code, mode) if p.is_diagonal]
