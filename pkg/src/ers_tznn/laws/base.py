"""Base classes for attracting laws (rectifying actions r(e))."""

from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, ClassVar, Dict, Self

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict

from ers_tznn.exceptions import UnsupportedOperationError


class LawFamily(Enum):
    """Attracting-law family."""
    POWER = "power"  # constant exponents
    POWER_EXPONENTIAL = "power_exponential"  # state-dependent exponent gamma(e)


def sig(e: np.ndarray, gamma: float | np.ndarray) -> np.ndarray:
    """Signed power |e|^gamma * sgn(e); exactly 0 at e = 0 for every gamma >= 0."""
    return np.sign(e) * np.abs(e) ** gamma


class BaseLaw(BaseModel, ABC):
    """Base class for an attracting law.

    Laws are immutable, validated at construction, and evaluate componentwise
    on floats or numpy arrays.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    type: str

    # Law metadata (override in subclasses)
    description: ClassVar[str] = "Base attracting law"
    family: ClassVar[LawFamily] = LawFamily.POWER
    fixed_time: ClassVar[bool] = False
    gain_fields: ClassVar[tuple[str, ...]] = ()

    @abstractmethod
    def _rectify(self, e: np.ndarray) -> np.ndarray:
        """Evaluate r(e) on an array."""

    def _exponent(self, e: np.ndarray) -> np.ndarray:
        raise UnsupportedOperationError(
            f"{self.type} has constant exponents; exponent() applies to power-exponential laws"
        )

    def rectify(self, e: ArrayLike) -> Any:
        """Rectifying action r(e), returned with the shape of ``e``.

        Args:
            e: Error value or array of error components

        Returns:
            r(e) as a float for scalar input, otherwise an array
        """
        out = self._rectify(np.asarray(e, dtype=float))
        return float(out) if np.ndim(out) == 0 else out

    def exponent(self, e: ArrayLike) -> Any:
        """State-dependent exponent gamma(e).

        Raises:
            UnsupportedOperationError: If the law has constant exponents
        """
        out = self._exponent(np.asarray(e, dtype=float))
        return float(out) if np.ndim(out) == 0 else out

    @property
    def is_fixed_time(self) -> bool:
        """Whether the settling time is bounded uniformly in the initial error."""
        return self.fixed_time

    def gains(self) -> Dict[str, float]:
        """Linear and power gains of the law keyed by field name."""
        return {name: getattr(self, name) for name in self.gain_fields}

    def with_gains(self, **gains: float) -> Self:
        """Copy of the law with some gains replaced.

        The copy is not re-validated, so zero gains are allowed; it is meant for
        evaluating parts of a gain split.
        """
        unknown = set(gains) - set(self.gain_fields)
        if unknown:
            raise KeyError(f"{self.type} has no gains {sorted(unknown)}")
        return self.model_copy(update=gains)
