"""TZNN integration: drives e = M z - u through the error dynamics.

With e = M z - u, requiring e' = r(e) + s(e) + w gives

    M z' = -M' z + u' + r(e) + s(e) + w,

solved for z' at every stage by a dense LU factorization.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Tuple

import numpy as np
from numpy.typing import ArrayLike

from ers_tznn.compensate import _CompensationBase
from ers_tznn.dynamics.disturbance import _DisturbanceBase
from ers_tznn.dynamics.integrator import rk4_step
from ers_tznn.dynamics.trace import _csv_text, _frozen
from ers_tznn.exceptions import NumericDivergenceError, ParameterError, StructuralError
from ers_tznn.laws import BaseLaw
from ers_tznn.qp.problem import (
    DerivativeMode,
    KktSystem,
    TimeVariantQP,
    build_kkt,
    kkt_system,
    solve_kkt,
)
from ers_tznn.session import atomic_write_text

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class QpTrace:
    """Samples of z, e = M z - u and the reference z* on a uniform grid."""

    times: np.ndarray
    z: np.ndarray
    e: np.ndarray
    zstar: np.ndarray
    disturbances: np.ndarray
    n: int
    m: int
    info: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("times", "z", "e", "zstar", "disturbances"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def n_components(self) -> int:
        return self.n + self.m

    def error_norm(self, component: int | None = None) -> np.ndarray:
        """|e_i(t)| for one component, or ||e(t)||_inf."""
        if component is not None:
            return np.abs(self.e[:, component])
        return np.max(np.abs(self.e), axis=1)

    def tracking_error(self) -> np.ndarray:
        """||z(t) - z*(t)||_inf per sample."""
        return np.max(np.abs(self.z - self.zstar), axis=1)

    def kkt_residuals(self, qp: TimeVariantQP) -> Tuple[np.ndarray, np.ndarray]:
        """Stationarity ||G x + c + A^T lambda||_inf and feasibility ||A x - b||_inf per sample."""
        stationarity = np.empty(self.times.size)
        feasibility = np.zeros(self.times.size)
        for i, t in enumerate(self.times):
            G, A, c, b = qp.blocks(float(t))
            x, lam = self.z[i, : self.n], self.z[i, self.n :]
            stationarity[i] = np.max(np.abs(G @ x + c + A.T @ lam))
            if self.m:
                feasibility[i] = np.max(np.abs(A @ x - b))
        return stationarity, feasibility

    def columns(self) -> Dict[str, np.ndarray]:
        k = self.n_components
        cols = {"t": self.times}
        cols.update({f"z_{i + 1}": self.z[:, i] for i in range(k)})
        cols.update({f"e_{i + 1}": self.e[:, i] for i in range(k)})
        cols.update({f"zstar_{i + 1}": self.zstar[:, i] for i in range(k)})
        return cols

    def to_csv_text(self) -> str:
        return _csv_text(self.columns())

    def to_csv(self, path: Path) -> Path:
        """Write ``t, z_1..z_k, e_1..e_k, zstar_1..zstar_k`` with a header row."""
        return atomic_write_text(Path(path), self.to_csv_text())


def neuron_rhs(
    system: KktSystem,
    law: BaseLaw,
    comp: _CompensationBase,
    t: float,
    z: np.ndarray,
    zdot: np.ndarray,
    w: np.ndarray,
) -> np.ndarray:
    """Componentwise neuron update (I - M) z' - M' z + u' + r(e) + s(e) + w.

    Each output i only needs row i of M, so every neuron evaluates its own
    entry. The exact derivative is a fixed point of this map.
    """
    M, u = system.snapshot(t)
    M_dot, u_dot = system.derivatives(t)
    e = M @ z - u
    return zdot - M @ zdot - M_dot @ z + u_dot + law._rectify(e) + comp._apply(e) + w


def integrate_tznn(
    qp: TimeVariantQP,
    law: BaseLaw,
    comp: _CompensationBase,
    dist: _DisturbanceBase,
    z0: ArrayLike | None,
    dt: float,
    horizon: float,
    derivative_mode: DerivativeMode | None = None,
) -> QpTrace:
    """Integrate the TZNN model with fixed-step RK4 from ``z0`` over [0, horizon].

    Args:
        qp: Problem data
        law: Attracting law applied componentwise to e
        comp: Disturbance compensation
        dist: Disturbance added to every error component
        z0: Initial state (zeros when None)
        dt: Step size
        horizon: Simulated time
        derivative_mode: Force analytic or finite-difference M', u'

    Returns:
        QpTrace with z, e and z* at every sample

    Raises:
        IllConditionedError: If M(t) is too close to singular at a sample or RK4 stage
        NumericDivergenceError: If z becomes non-finite
    """
    if not (dt > 0 and horizon > 0 and dt <= horizon):
        raise ParameterError("dt", f"need 0 < dt <= horizon, got dt={dt!r}, horizon={horizon!r}")
    system = kkt_system(qp, derivative_mode)
    k = qp.k
    z = np.zeros(k) if z0 is None else np.asarray(z0, dtype=float).reshape(-1).copy()
    if z.shape != (k,):
        raise StructuralError(f"z0 has {z.size} entries, expected n + m = {k}")

    n_steps = max(1, int(round(horizon / dt)))
    times = np.arange(n_steps + 1) * dt
    sampler = dist.sampler(k, n_steps)
    zs = np.zeros((n_steps + 1, k))
    es = np.zeros((n_steps + 1, k))
    zstars = np.zeros((n_steps + 1, k))
    ws = np.zeros((n_steps + 1, k))

    def record(i: int, t: float, state: np.ndarray) -> None:
        M, u = build_kkt(qp, t)
        zs[i] = state
        es[i] = M @ state - u
        zstars[i] = solve_kkt(M, u, t)
        ws[i] = sampler.at(i, t)

    record(0, 0.0, z)
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(n_steps):

            def zdot(t: float, state: np.ndarray, step: int = step) -> np.ndarray:
                M, u = system.snapshot(t)
                M_dot, u_dot = system.derivatives(t)
                e = M @ state - u
                w = sampler.at(step, t)
                rhs = -M_dot @ state + u_dot + law._rectify(e) + comp._apply(e) + w
                return solve_kkt(M, rhs, t)

            z = rk4_step(zdot, times[step], z, dt)
            if not np.isfinite(z).all():
                logger.error("TZNN state diverged at t=%.6g", times[step + 1])
                raise NumericDivergenceError(float(times[step + 1]))
            record(step + 1, float(times[step + 1]), z)

    return QpTrace(
        times=times,
        z=zs,
        e=es,
        zstar=zstars,
        disturbances=ws,
        n=qp.n,
        m=qp.m,
        info={"derivative_mode": system.derivative_mode, "problem": qp.name},
    )
