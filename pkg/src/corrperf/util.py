# SPDX-FileCopyrightText: 2026-present corrperf contributors
#
# SPDX-License-Identifier: MIT
"""Utility functions for corrperf."""
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, Union
from uuid import uuid4

import numpy as np

from .errors import CorrPerfError, Error, NumericalResidueError

# Tolerance under which imaginary parts of nominally real numbers are dropped.
IMAG_TOLERANCE = 1e-12


def utc_now_iso() -> str:
    """Return current UTC time as RFC3339 / ISO 8601 string (e.g. 2026-01-21T12:00:00.123Z)."""
    now = datetime.now(timezone.utc)
    return now.strftime("%Y-%m-%dT%H:%M:%S.%f")[:-3] + "Z"


def new_id() -> str:
    """Generate a new UUID string."""
    return str(uuid4())


def create_structured_error(
    exception: BaseException,
    source: str = "system",
    code: Optional[str] = None,
    retryable: Optional[bool] = None,
) -> Dict[str, Any]:
    """Create a structured error object from an exception.

    Args:
        exception: The exception to convert
        source: Source of error (config, model, numerics, system)
        code: Optional error code, taken from ``CorrPerfError.code`` when omitted
        retryable: Whether error is retryable (numerical runs are deterministic, so False by default)

    Returns:
        Structured error dictionary
    """
    details = None
    if isinstance(exception, CorrPerfError):
        code = code or exception.code
        details = exception.details

    error = Error(
        type=type(exception).__name__,
        message=str(exception),
        code=code,
        retryable=bool(retryable),
        source=source,
        details=details,
    )
    return error.to_dict()


def real_or_raise(value: complex, what: str = "value", tolerance: float = IMAG_TOLERANCE) -> float:
    """Drop the imaginary part of a nominally real number after checking it is negligible."""
    imag = float(np.imag(value))
    if abs(imag) >= tolerance:
        raise NumericalResidueError(
            f"{what} has imaginary residue {imag:.3e} (tolerance {tolerance:.0e})",
            details={"real": float(np.real(value)), "imag": imag},
        )
    return float(np.real(value))


def popcount(values: Union[int, np.ndarray]) -> Union[int, np.ndarray]:
    """Number of set bits, elementwise for integer arrays (as int64, safe for sign arithmetic)."""
    if isinstance(values, (int, np.integer)):
        return int(np.bitwise_count(np.int64(values)))
    return np.bitwise_count(np.asarray(values, dtype=np.int64)).astype(np.int64)


def format_number(value: float) -> str:
    """Render a float with 17 significant digits."""
    return f"{value:.17g}"


def write_csv(path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[Any]]) -> int:
    """Write a CSV atomically. Floats get 17 significant digits.

    Returns:
        Number of data rows written
    """
    lines = [",".join(header)]
    for row in rows:
        cells = [format_number(v) if isinstance(v, (float, np.floating)) else str(v) for v in row]
        lines.append(",".join(cells))
    write_text_atomic(path, "\n".join(lines) + "\n")
    return len(lines) - 1


def write_text_atomic(path: Union[str, Path], text: str) -> None:
    """Write ``text`` to ``path`` through a temp file in the same directory and a rename."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=str(target.parent))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
