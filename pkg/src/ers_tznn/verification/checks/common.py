"""Helpers shared by the acceptance checks."""

import math
from typing import Iterable, List, Sequence

import numpy as np

from ers_tznn.compensate import NoCompensation
from ers_tznn.dynamics import ErsConfig, ZeroDisturbance, empirical_settling_time, integrate_scalar
from ers_tznn.laws import BaseLaw
from ers_tznn.scenario import Margins, SettlingReport
from ers_tznn.settle import SettlingEstimate, estimate_for_law, settling_time_quadrature, tail_time
from ers_tznn.verification.base import CheckContext

SETTLE_TOL = 1e-6


def tolerance(analytic: float, dt: float) -> float:
    """max(1% of the analytic time, 10 dt)."""
    return max(0.01 * analytic, 10.0 * dt)


def horizon_for(law: BaseLaw, e0s: Iterable[float], dt: float) -> float:
    """Long enough for every initial error to settle with room to spare."""
    longest = 0.0
    for e0 in e0s:
        estimate = estimate_for_law(law, e0) or settling_time_quadrature(law, e0)
        longest = max(longest, estimate.time)
    return 1.2 * longest + 100.0 * dt + 0.5


def settling_times(
    law: BaseLaw,
    e0s: Sequence[float],
    dt: float,
    tol: float = SETTLE_TOL,
    horizon: float | None = None,
) -> List[float | None]:
    """Empirical settling times of the undisturbed law, one per initial error.

    All initial errors are integrated together as independent components.
    """
    horizon = horizon if horizon is not None else horizon_for(law, e0s, dt)
    config = ErsConfig(law=law, dt=dt, horizon=horizon, settle_tol=tol)
    trace = integrate_scalar(config, list(e0s))
    return [empirical_settling_time(trace, tol, component=i) for i in range(len(e0s))]


def exact_at_tol(law: BaseLaw, exact: float, tol: float = SETTLE_TOL) -> float:
    """Time at which |e| falls to ``tol`` given the exact settling time."""
    return exact - tail_time(law, tol)


def record_report(
    ctx: CheckContext,
    name: str,
    law: BaseLaw,
    analytic: SettlingEstimate,
    empirical: float | None,
    passed: bool,
    tol: float = SETTLE_TOL,
) -> None:
    """Attach a SettlingReport for one undisturbed scalar cell."""
    tol_time = tolerance(analytic.time, ctx.dt)
    margin = None if empirical is None else analytic.time + tol_time - empirical
    report = SettlingReport(
        scenario=name,
        problem="scalar",
        law=law.model_dump(),
        comp=NoCompensation().model_dump(),
        disturbance=ZeroDisturbance().model_dump(),
        settle_tol=tol,
        analytic=analytic,
        tolerance=tol_time,
        empirical=empirical,
        margins=Margins(settling=margin),
        passed=passed,
    )
    ctx.reports.append(report.to_json())


def compare_exact(
    ctx: CheckContext,
    name: str,
    law: BaseLaw,
    e0s: Sequence[float],
    estimates: Sequence[SettlingEstimate],
) -> List[float | None]:
    """Check empirical settling against exact times, cell by cell."""
    empirical = settling_times(law, e0s, ctx.dt)
    for e0, estimate, measured in zip(e0s, estimates, empirical):
        target = exact_at_tol(law, estimate.time)
        tol_time = tolerance(estimate.time, ctx.dt)
        ok = measured is not None and abs(measured - target) <= tol_time
        ctx.expect(
            ok,
            f"{name} e0={e0:g}: empirical {measured} vs {estimate.formula_id} "
            f"{estimate.time:.6g} (at tol {target:.6g}, tolerance {tol_time:.3g})",
            law=law.model_dump(),
            e0=e0,
            formula_id=estimate.formula_id,
            analytic=estimate.time,
            empirical=measured,
        )
        record_report(ctx, f"{name}-e0={e0:g}", law, estimate, measured, ok)
    return empirical


def compare_bound(
    ctx: CheckContext, name: str, law: BaseLaw, e0s: Sequence[float], bound: SettlingEstimate
) -> List[float | None]:
    """Check that empirical settling never exceeds a uniform bound."""
    empirical = settling_times(law, e0s, ctx.dt, horizon=1.2 * bound.time + 0.5)
    for e0, measured in zip(e0s, empirical):
        ok = measured is not None and measured <= bound.time + 10.0 * ctx.dt
        ctx.expect(
            ok,
            f"{name} e0={e0:g}: empirical {measured} exceeds {bound.formula_id} {bound.time:.6g}",
            law=law.model_dump(),
            e0=e0,
            formula_id=bound.formula_id,
            analytic=bound.time,
            empirical=measured,
        )
        record_report(ctx, f"{name}-e0={e0:g}", law, bound, measured, ok)
    return empirical


def log_grid(lo: float, hi: float, points: int) -> List[float]:
    return [float(x) for x in np.logspace(math.log10(lo), math.log10(hi), points)]
