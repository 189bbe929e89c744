"""Power-rate laws with constant exponents."""

from typing import ClassVar, Literal

import numpy as np
from pydantic import Field

from ers_tznn.laws.base import BaseLaw, sig


class SprlLaw(BaseLaw):
    """Single power-rate law r(e) = -kappa sig^gamma(e)."""

    type: Literal["SPRL"] = "SPRL"
    kappa: float = Field(gt=0, description="power gain")
    gamma: float = Field(gt=0, lt=1, description="exponent in (0, 1)")

    description: ClassVar[str] = "Single power-rate law (finite time)"
    gain_fields: ClassVar[tuple[str, ...]] = ("kappa",)

    def _rectify(self, e: np.ndarray) -> np.ndarray:
        return -self.kappa * sig(e, self.gamma)


class SprlAltLaw(BaseLaw):
    """Single power-rate law with a linear term r(e) = -rho e - kappa sig^gamma(e)."""

    type: Literal["SPRLalt"] = "SPRLalt"
    rho: float = Field(gt=0, description="linear gain")
    kappa: float = Field(gt=0, description="power gain")
    gamma: float = Field(gt=0, lt=1, description="exponent in (0, 1)")

    description: ClassVar[str] = "Single power-rate law plus linear term (finite time)"
    gain_fields: ClassVar[tuple[str, ...]] = ("rho", "kappa")

    def _rectify(self, e: np.ndarray) -> np.ndarray:
        return -self.rho * e - self.kappa * sig(e, self.gamma)


class DprlLaw(BaseLaw):
    """Double power-rate law r(e) = -kappa1 sig^gamma1(e) - kappa2 sig^gamma2(e)."""

    type: Literal["DPRL"] = "DPRL"
    kappa1: float = Field(gt=0, description="gain of the sub-linear power")
    kappa2: float = Field(gt=0, description="gain of the super-linear power")
    gamma1: float = Field(gt=0, lt=1, description="exponent in (0, 1)")
    gamma2: float = Field(gt=1, description="exponent above 1")

    description: ClassVar[str] = "Double power-rate law (fixed time)"
    fixed_time: ClassVar[bool] = True
    gain_fields: ClassVar[tuple[str, ...]] = ("kappa1", "kappa2")

    def _rectify(self, e: np.ndarray) -> np.ndarray:
        return -self.kappa1 * sig(e, self.gamma1) - self.kappa2 * sig(e, self.gamma2)

    @property
    def theta(self) -> float:
        return (1.0 - self.gamma1) / (self.gamma2 - self.gamma1)


class DprlAltLaw(DprlLaw):
    """Double power-rate law with a linear term."""

    type: Literal["DPRLalt"] = "DPRLalt"  # type: ignore[assignment]
    rho: float = Field(gt=0, description="linear gain")

    description: ClassVar[str] = "Double power-rate law plus linear term (fixed time)"
    gain_fields: ClassVar[tuple[str, ...]] = ("rho", "kappa1", "kappa2")

    def _rectify(self, e: np.ndarray) -> np.ndarray:
        return -self.rho * e + super()._rectify(e)
