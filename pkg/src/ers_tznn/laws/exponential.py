"""Power-exponential laws: r(e) = -rho e/e* - kappa (|e|/e*)^gamma(e) sgn(e)."""

from abc import abstractmethod
from typing import ClassVar, Literal

import numpy as np
from pydantic import Field

from ers_tznn.laws.base import BaseLaw, LawFamily


class PowerExponentialLaw(BaseLaw):
    """Shared evaluation for laws with a state-dependent exponent."""

    rho: float = Field(ge=0, description="linear gain (may be zero)")
    kappa: float = Field(gt=0, description="power gain")
    estar: float = Field(gt=0, description="transition state e*")

    family: ClassVar[LawFamily] = LawFamily.POWER_EXPONENTIAL
    fixed_time: ClassVar[bool] = True
    gain_fields: ClassVar[tuple[str, ...]] = ("rho", "kappa")

    @abstractmethod
    def _exponent(self, e: np.ndarray) -> np.ndarray:
        """Exponent gamma(e); must be even in e."""

    def _rectify(self, e: np.ndarray) -> np.ndarray:
        y = np.abs(e) / self.estar
        with np.errstate(over="ignore"):
            power = y ** self._exponent(e)
        return -self.rho * (e / self.estar) - self.kappa * power * np.sign(e)


class TwoPhasePeLaw(PowerExponentialLaw):
    """Two-phase exponent: gamma1 below e*, gamma2 from e* on."""

    type: Literal["TwoPhasePE"] = "TwoPhasePE"
    gamma1: float = Field(gt=0, lt=1, description="reaching-phase exponent")
    gamma2: float = Field(gt=1, description="traveling-phase exponent")

    description: ClassVar[str] = "Two-phase power-exponential law (fixed time)"

    def _exponent(self, e: np.ndarray) -> np.ndarray:
        return np.where(np.abs(e) < self.estar, self.gamma1, self.gamma2)


class PiecewiseExpLaw(PowerExponentialLaw):
    """Exponent interpolated linearly in |e|/e* between gamma1 and gamma2."""

    gamma1: float = Field(gt=0, lt=1, description="exponent near the origin")
    gamma2: float = Field(gt=1, description="exponent far from the origin")
    delta: float = Field(gt=0, lt=1, description="width of the interpolation band")

    @property
    @abstractmethod
    def knots(self) -> tuple[float, float]:
        """Band edges in |e| where the exponent changes branch."""


class PiecewiseExpALaw(PiecewiseExpLaw):
    """Interpolation band [delta e*, e*] below the transition state."""

    type: Literal["PiecewiseExpA"] = "PiecewiseExpA"

    description: ClassVar[str] = "Piecewise exponent, band below e* (fixed time)"

    @property
    def knots(self) -> tuple[float, float]:
        return self.delta * self.estar, self.estar

    def _exponent(self, e: np.ndarray) -> np.ndarray:
        a = np.abs(e)
        y = a / self.estar
        ramp = (self.gamma2 - self.gamma1) / (1.0 - self.delta) * (y - 1.0) + self.gamma2
        return np.select(
            [a <= self.delta * self.estar, a < self.estar],
            [self.gamma1, ramp],
            default=self.gamma2,
        )


class PiecewiseExpBLaw(PiecewiseExpLaw):
    """Interpolation band [e*, (1 + delta) e*] above the transition state."""

    type: Literal["PiecewiseExpB"] = "PiecewiseExpB"

    description: ClassVar[str] = "Piecewise exponent, band above e* (fixed time)"

    @property
    def knots(self) -> tuple[float, float]:
        return self.estar, (1.0 + self.delta) * self.estar

    def _exponent(self, e: np.ndarray) -> np.ndarray:
        a = np.abs(e)
        y = a / self.estar
        ramp = (self.gamma2 - self.gamma1) / self.delta * (y - 1.0) + self.gamma1
        return np.select(
            [a <= self.estar, a < (1.0 + self.delta) * self.estar],
            [self.gamma1, ramp],
            default=self.gamma2,
        )


class FractionalExpLaw(PowerExponentialLaw):
    """Fractional exponent gamma(e) = (alpha + beta y^2m) / (1 + y^2m), y = |e|/e*."""

    type: Literal["FractionalExp"] = "FractionalExp"
    alpha: float = Field(ge=0, lt=1, description="exponent at the origin")
    beta: float = Field(gt=2, description="limit exponent as |e| grows")
    m: int = Field(ge=1, description="sharpness of the transition")

    description: ClassVar[str] = "Fractional power-exponential law (fixed time)"

    @property
    def reaching_floor(self) -> float:
        """min over y in (0, 1] of y^(beta y^2m), which equals exp(-beta / (2 m e))."""
        return float(np.exp(-self.beta / (2.0 * self.m * np.e)))

    def _exponent(self, e: np.ndarray) -> np.ndarray:
        y = np.abs(e) / self.estar
        with np.errstate(over="ignore"):
            q = y ** (2 * self.m)
        # Written so that q = inf yields beta instead of nan
        return self.beta - (self.beta - self.alpha) / (1.0 + q)
