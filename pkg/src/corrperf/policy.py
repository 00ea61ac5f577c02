# SPDX-FileCopyrightText: 2026-present corrperf contributors
#
# SPDX-License-Identifier: MIT
"""Evaluation-path selection for noise models."""
from enum import Enum
from typing import Optional, Tuple

from .errors import InfeasiblePathError
from .models import DENSE_SPIN_CAP, NoiseModel


class Method(str, Enum):
    DENSE = "dense"
    SECTOR = "sector"


class PathPolicy:
    """Decides whether a model is evaluated by the sector fast path or the dense oracle."""

    def __init__(
        self,
        prefer: Optional[Method] = None,
        dense_spin_cap: int = DENSE_SPIN_CAP,
    ):
        """Initialize policy.

        Args:
            prefer: Force a method when it is feasible (None picks sector whenever possible)
            dense_spin_cap: Largest n + bath spins the dense path accepts
        """
        self.prefer = None if prefer is None else Method(prefer)
        self.dense_spin_cap = min(dense_spin_cap, DENSE_SPIN_CAP)

    def sector_feasible(self, model: NoiseModel) -> Tuple[bool, str]:
        if not model.is_symmetric:
            return False, "asymmetric coupling table"
        if model.bath.g == 0:
            return False, "zero coupling leaves no g*tau axis"
        return True, "symmetric couplings"

    def dense_feasible(self, model: NoiseModel) -> Tuple[bool, str]:
        spins = model.n + model.total_bath_spins
        if spins > self.dense_spin_cap:
            return False, f"{spins} spins exceed dense cap {self.dense_spin_cap}"
        if model.bath.g == 0:
            return False, "zero coupling leaves no g*tau axis"
        return True, f"{spins} spins within dense cap"

    def choose(self, model: NoiseModel) -> Tuple[Method, str]:
        """Pick a method for ``model``.

        Returns:
            Tuple of (method, reason)

        Raises:
            InfeasiblePathError: neither path can serve the model
        """
        sector_ok, sector_reason = self.sector_feasible(model)
        dense_ok, dense_reason = self.dense_feasible(model)

        if self.prefer is Method.DENSE and dense_ok:
            return Method.DENSE, f"dense preferred: {dense_reason}"
        if self.prefer is Method.SECTOR and not sector_ok:
            raise InfeasiblePathError(f"sector path unavailable for {model.tag}: {sector_reason}")

        if sector_ok:
            return Method.SECTOR, sector_reason
        if dense_ok:
            return Method.DENSE, f"{sector_reason}; {dense_reason}"
        raise InfeasiblePathError(
            f"no evaluation path for {model.tag}: {sector_reason}; {dense_reason}",
            details={"model": model.tag},
        )
