"""Sampled trajectories of the error dynamics and the measurements taken on them."""

import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict

import numpy as np

from ers_tznn.dynamics.system import ErsConfig
from ers_tznn.exceptions import ParameterError
from ers_tznn.session import atomic_write_text


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array, dtype=float)
    array.setflags(write=False)
    return array


def _csv_text(columns: Dict[str, np.ndarray]) -> str:
    """Comma-separated table with a header row and round-trip precision."""
    buffer = io.StringIO()
    matrix = np.column_stack(list(columns.values()))
    np.savetxt(buffer, matrix, fmt="%.17g", delimiter=",", header=",".join(columns), comments="")
    return buffer.getvalue()


@dataclass(frozen=True, eq=False)
class Trace:
    """Error samples on a uniform grid starting at t = 0."""

    times: np.ndarray
    errors: np.ndarray  # (n_samples, k)
    disturbances: np.ndarray  # (n_samples, k)
    meta: ErsConfig
    info: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "times", _frozen(self.times))
        object.__setattr__(self, "errors", _frozen(np.atleast_2d(self.errors.T).T))
        object.__setattr__(self, "disturbances", _frozen(np.atleast_2d(self.disturbances.T).T))

    @property
    def n_components(self) -> int:
        return self.errors.shape[1]

    def error_norm(self, component: int | None = None) -> np.ndarray:
        """|e_i(t)| for one component, or max_i |e_i(t)| when ``component`` is None."""
        if component is not None:
            return np.abs(self.errors[:, component])
        return np.max(np.abs(self.errors), axis=1)

    def columns(self) -> Dict[str, np.ndarray]:
        k = self.n_components
        cols = {"t": self.times}
        cols.update({f"e_{i + 1}": self.errors[:, i] for i in range(k)})
        cols.update({f"w_{i + 1}": self.disturbances[:, i] for i in range(k)})
        return cols

    def to_csv_text(self) -> str:
        return _csv_text(self.columns())

    def to_csv(self, path: Path) -> Path:
        """Write ``t, e_1..e_k, w_1..w_k`` with a header row."""
        return atomic_write_text(Path(path), self.to_csv_text())


def empirical_settling_time(trace: Any, tol: float, component: int | None = None) -> float | None:
    """Earliest sample time after which the error stays within ``tol``.

    Works on any trace exposing ``times`` and ``error_norm``. Chattering that
    dips below ``tol`` and leaves again counts only from the final re-entry.

    Args:
        trace: Trace or QpTrace
        tol: Settling threshold on |e| (infinity norm across components)
        component: Restrict the measurement to one component

    Returns:
        Settling time, or None if the last sample is still above ``tol``
    """
    if not tol > 0:
        raise ParameterError("tol", f"must be > 0, got {tol!r}")
    norm = trace.error_norm(component)
    above = np.flatnonzero(norm > tol)
    if above.size == 0:
        return float(trace.times[0])
    last = int(above[-1])
    if last == norm.size - 1:
        return None
    return float(trace.times[last + 1])


def empirical_residual(trace: Any, after: float, component: int | None = None) -> float:
    """sup of |e(t)| over samples with t >= ``after``.

    Raises:
        ParameterError: If ``after`` is not before the last sample
    """
    if not after < trace.times[-1]:
        raise ParameterError(
            "after", f"must be before the horizon {trace.times[-1]!r}, got {after!r}"
        )
    mask = trace.times >= after
    return float(np.max(trace.error_norm(component)[mask]))
