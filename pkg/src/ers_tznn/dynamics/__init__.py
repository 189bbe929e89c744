"""Error-dynamics integration: disturbances, the integrator and traces."""

from ers_tznn.dynamics.disturbance import (
    BoundedNoise,
    ConstantDisturbance,
    Disturbance,
    SinusoidDisturbance,
    ZeroDisturbance,
)
from ers_tznn.dynamics.integrator import (
    ErrorIntegrator,
    integrate_scalar,
    lyapunov_reach_time,
    rk4_step,
)
from ers_tznn.dynamics.system import ErsConfig
from ers_tznn.dynamics.trace import Trace, empirical_residual, empirical_settling_time

__all__ = [
    "BoundedNoise",
    "ConstantDisturbance",
    "Disturbance",
    "ErrorIntegrator",
    "ErsConfig",
    "SinusoidDisturbance",
    "Trace",
    "ZeroDisturbance",
    "empirical_residual",
    "empirical_settling_time",
    "integrate_scalar",
    "lyapunov_reach_time",
    "rk4_step",
]
