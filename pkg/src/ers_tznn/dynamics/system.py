"""Simulation setup for the error dynamics e' = r(e) + s(e) + w(t)."""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ers_tznn.compensate import Compensation, NoCompensation, SignumCompensation
from ers_tznn.config import get_settings
from ers_tznn.dynamics.disturbance import Disturbance, ZeroDisturbance
from ers_tznn.laws import AttractingLaw


class ErsConfig(BaseModel):
    """Law, compensation, disturbance and numerics of one simulation."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    law: AttractingLaw
    comp: Compensation = Field(default_factory=NoCompensation)
    dist: Disturbance = Field(default_factory=ZeroDisturbance)
    dt: float = Field(default_factory=lambda: get_settings().default_dt, gt=0)
    horizon: float = Field(default_factory=lambda: get_settings().default_horizon, gt=0)
    settle_tol: float = Field(default_factory=lambda: get_settings().settle_tol, gt=0)
    deadzone: float = Field(default_factory=lambda: get_settings().deadzone, gt=0)

    @model_validator(mode="after")
    def _check_numerics(self) -> "ErsConfig":
        if self.dt > self.horizon:
            raise ValueError(f"dt={self.dt} exceeds horizon={self.horizon}")
        if not self.settle_tol > self.deadzone:
            raise ValueError(f"settle_tol={self.settle_tol} must exceed deadzone={self.deadzone}")
        return self

    @property
    def n_steps(self) -> int:
        return max(1, int(round(self.horizon / self.dt)))

    @property
    def is_nominal(self) -> bool:
        """Undisturbed and continuous: finite-time arrival can be clamped to exactly zero."""
        return self.dist.is_zero and not isinstance(self.comp, SignumCompensation)
