# SPDX-FileCopyrightText: 2026-present corrperf contributors
#
# SPDX-License-Identifier: MIT
"""Structured error handling for corrperf."""
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field


class Error(BaseModel):
    """Structured error object."""

    type: str = Field(..., description="Error type/class name")
    message: str = Field(..., description="Error message")
    code: Optional[str] = Field(None, description="Error code if available")
    retryable: bool = Field(False, description="Whether the error is retryable")
    source: str = Field("system", description="Source of error: config, model, numerics, system")
    details: Optional[dict] = Field(None, description="Additional error details")

    def to_dict(self) -> dict:
        """Convert error to dictionary."""
        return self.model_dump(exclude_none=True)


class CorrPerfError(Exception):
    """Base class for all corrperf errors.

    ``code`` ends up in structured ``run.end`` events, ``exit_status`` is what
    the CLI returns when the error escapes a command.
    """

    code = "corrperf_error"
    exit_status = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details = details


class ConfigError(CorrPerfError):
    """Experiment configuration failed schema validation."""

    code = "invalid_config"
    exit_status = 2


class ModelError(CorrPerfError):
    """A noise model or code description is inconsistent."""

    code = "invalid_model"
    exit_status = 2


class DimensionError(CorrPerfError):
    """Dense size cap exceeded or operand dimensions disagree."""

    code = "dimension"
    exit_status = 3


class InfeasiblePathError(CorrPerfError):
    """No evaluation path can serve a model."""

    code = "infeasible_path"
    exit_status = 3


class NumericalResidueError(CorrPerfError):
    """A nominally real quantity carried an imaginary residue, or a probability left [0, 1]."""

    code = "numerical_residue"
    exit_status = 1


class HolderViolationError(CorrPerfError):
    """Local-control fidelity exceeded global-control fidelity."""

    code = "holder_violation"
    exit_status = 1


class ValidationFailure(CorrPerfError):
    """The oracle-equivalence suite found a deviation above tolerance."""

    code = "validation_failed"
    exit_status = 1
