"""Disturbance-compensation terms s(e) and residual-set radii.

Under a disturbance bounded by varpi, the smooth compensation keeps the error
inside a residual set around the origin. Two radii are offered:

* :func:`residual_radius` evaluates the closed-form radius as printed for the
  three law classes it covers.
* :func:`certified_radius` solves the underlying Lyapunov inequality
  |e| |r''(e)| >= varpi eps |e| / (varpi |e| + eps) for the split law r''
  numerically; outside this radius |e| strictly decreases.
"""

import logging
import math
from typing import Annotated, Any, ClassVar, Dict, Literal, Union

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import brentq

from ers_tznn.exceptions import ParameterError, UnsupportedOperationError
from ers_tznn.laws import (
    BaseLaw,
    DprlAltLaw,
    FractionalExpLaw,
    PiecewiseExpLaw,
    PowerExponentialLaw,
    TwoPhasePeLaw,
)

logger = logging.getLogger(__name__)


class _CompensationBase(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    def _apply(self, e: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def apply(self, e: ArrayLike) -> Any:
        """s(e), returned with the shape of ``e``."""
        out = self._apply(np.asarray(e, dtype=float))
        return float(out) if np.ndim(out) == 0 else out

    @property
    def bound(self) -> float:
        """Declared disturbance bound varpi (0 when nothing is compensated)."""
        return 0.0


class NoCompensation(_CompensationBase):
    """s(e) = 0."""

    type: Literal["None"] = "None"

    def _apply(self, e: np.ndarray) -> np.ndarray:
        return np.zeros_like(e)


class SignumCompensation(_CompensationBase):
    """s(e) = -varpi sgn(e), with sgn(0) = 0."""

    type: Literal["Signum"] = "Signum"
    varpi: float = Field(gt=0, description="disturbance bound")

    def _apply(self, e: np.ndarray) -> np.ndarray:
        return -self.varpi * np.sign(e)

    @property
    def bound(self) -> float:
        return self.varpi


class SmoothCompensation(_CompensationBase):
    """s(e) = -varpi^2 e / (varpi |e| + eps), a continuous odd approximation of the signum."""

    type: Literal["Smooth"] = "Smooth"
    varpi: float = Field(gt=0, description="disturbance bound")
    epsilon: float = Field(gt=0, description="smoothing constant")

    def _apply(self, e: np.ndarray) -> np.ndarray:
        return -self.varpi ** 2 * e / (self.varpi * np.abs(e) + self.epsilon)

    @property
    def bound(self) -> float:
        return self.varpi


Compensation = Annotated[
    Union[NoCompensation, SignumCompensation, SmoothCompensation],
    Field(discriminator="type"),
]


def compensate(comp: _CompensationBase, e: ArrayLike) -> Any:
    """Compensation term s(e) for the selected compensation."""
    return comp.apply(e)


class GainSplit(BaseModel):
    """Parts of the law gains reserved for attenuating the disturbance.

    Each field is the double-primed part of the matching law gain:
    ``rho2`` of rho, ``kappa2`` of kappa, ``kappa1_2`` of kappa1 and
    ``kappa2_2`` of kappa2.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    rho2: float = Field(default=0.0, ge=0)
    kappa2: float = Field(default=0.0, ge=0)
    kappa1_2: float = Field(default=0.0, ge=0)
    kappa2_2: float = Field(default=0.0, ge=0)

    # law gain name -> split field name
    FIELD_FOR_GAIN: ClassVar[Dict[str, str]] = {
        "rho": "rho2",
        "kappa": "kappa2",
        "kappa1": "kappa1_2",
        "kappa2": "kappa2_2",
    }

    @classmethod
    def half_of(cls, law: BaseLaw) -> "GainSplit":
        """Default split: half of every gain of the law."""
        return cls(**{cls.FIELD_FOR_GAIN[name]: value / 2.0 for name, value in law.gains().items()})

    def part_for(self, gain: str) -> float:
        return getattr(self, self.FIELD_FOR_GAIN[gain])

    def check_against(self, law: BaseLaw) -> None:
        """Each split part must stay strictly below the law gain it is taken from.

        Raises:
            ParameterError: Naming the split field that violates this
        """
        for name, value in law.gains().items():
            part = self.part_for(name)
            if part > 0 and not part < value:
                raise ParameterError(
                    self.FIELD_FOR_GAIN[name],
                    f"split part {part!r} must be < law gain {name}={value!r}",
                )


def split_law(law: BaseLaw, split: GainSplit) -> BaseLaw:
    """The law with every gain replaced by its split part."""
    split.check_against(law)
    return law.with_gains(**{name: split.part_for(name) for name in law.gains()})


def complement_law(law: BaseLaw, split: GainSplit) -> BaseLaw:
    """The law with every gain reduced by its split part (the part left for convergence)."""
    split.check_against(law)
    remaining = {name: value - split.part_for(name) for name, value in law.gains().items()}
    return law.with_gains(**remaining)


def _required(split: GainSplit, field: str) -> float:
    value = getattr(split, field)
    if not value > 0:
        raise ParameterError(field, "required split component must be > 0")
    return value


def _root(base: float, power: float) -> float:
    """base ** power with power possibly infinite (alpha = 0)."""
    if math.isinf(power):
        if base < 1:
            return 0.0
        return 1.0 if base == 1 else math.inf
    return base ** power


def residual_radius(law: BaseLaw, epsilon: float, split: GainSplit) -> float:
    """Closed-form residual radius for smooth compensation with constant epsilon.

    Args:
        law: DPRLalt, a two-phase/piecewise exponent law with rho > 0, or a
            fractional law with rho > 0
        epsilon: Smoothing constant of the compensation
        split: Gain split; the parts used by the law's case must be positive

    Raises:
        ParameterError: Missing or oversized split component, or epsilon <= 0
        UnsupportedOperationError: For laws outside the three covered cases
    """
    if not epsilon > 0:
        raise ParameterError("epsilon", f"must be > 0, got {epsilon!r}")
    split.check_against(law)
    two_eps = 2.0 * epsilon

    if isinstance(law, DprlAltLaw):
        return min(
            two_eps / _required(split, "rho2"),
            (two_eps / _required(split, "kappa1_2")) ** (1.0 / law.gamma1),
            (two_eps / _required(split, "kappa2_2")) ** (1.0 / law.gamma2),
        )

    if isinstance(law, PowerExponentialLaw) and law.rho > 0:
        rho2 = _required(split, "rho2")
        kappa2 = _required(split, "kappa2")
        if isinstance(law, (TwoPhasePeLaw, PiecewiseExpLaw)):
            return law.estar * min(
                two_eps / rho2,
                (two_eps / kappa2) ** (1.0 / law.gamma1),
                (two_eps / kappa2) ** (1.0 / law.gamma2),
            )
        if isinstance(law, FractionalExpLaw):
            floor = law.reaching_floor
            reach_power = math.inf if law.alpha == 0 else 1.0 / law.alpha
            return law.estar * min(
                two_eps / rho2,
                (two_eps / kappa2) ** (2.0 / law.beta),
                _root(two_eps / (kappa2 * floor), reach_power),
            )

    raise UnsupportedOperationError(
        f"no closed-form residual radius for {law.type} "
        "(rho > 0 required for power-exponential laws)"
    )


def certified_radius(
    law: BaseLaw,
    comp: SmoothCompensation,
    split: GainSplit | None = None,
    grid_points: int = 2000,
) -> float:
    """Radius outside which |e| provably decreases under smooth compensation.

    Returns the largest |e| with |r''(e)| (varpi |e| + eps) < varpi eps, where
    r'' is the law restricted to the split gains. Located on a logarithmic
    grid and refined with Brent's method; |r''| is not monotone for every law,
    so the last sign change on the grid is used.

    Raises:
        UnsupportedOperationError: If no sign change exists on the grid (the
            split law is too weak for a certificate)
    """
    split = split or GainSplit.half_of(law)
    weak = split_law(law, split)
    varpi, eps = comp.varpi, comp.epsilon
    scale = float(getattr(law, "estar", 1.0))

    def gap(y: Any) -> Any:
        return np.abs(weak.rectify(y)) * (varpi * y + eps) - varpi * eps

    grid = scale * np.logspace(-18, 9, grid_points)
    values = gap(grid)
    inside = np.flatnonzero(values < 0)
    if inside.size == 0:
        return 0.0
    last = int(inside[-1])
    if last == grid.size - 1:
        raise UnsupportedOperationError(
            f"split gains of {law.type} do not dominate the disturbance on |e| <= {grid[-1]:.3e}"
        )
    radius = brentq(gap, grid[last], grid[last + 1], xtol=1e-15, rtol=1e-12)
    logger.debug("certified radius %.6e for %s (varpi=%s, eps=%s)", radius, law.type, varpi, eps)
    return float(radius)
