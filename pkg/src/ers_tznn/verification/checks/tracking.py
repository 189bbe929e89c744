"""Benchmark QP tracking without disturbance."""

import math

import numpy as np

from ers_tznn.laws import DprlLaw
from ers_tznn.scenario import BenchmarkProblem, Numerics, Scenario, run_scenario
from ers_tznn.verification.base import BaseCheck, CheckContext
from ers_tznn.verification.checks.common import SETTLE_TOL

TRACKING_LIMIT = 1e-4
KKT_LIMIT = 1e-5


class QpTrackingCheck(BaseCheck):
    name = "qp-tracking"
    description = "TZNN tracks the benchmark QP solution after the fixed-time bound"
    criterion = 13

    def evaluate(self, ctx: CheckContext) -> None:
        horizon = ctx.pick(8.0, 20.0)
        scenario = Scenario(
            name="tracking-DPRL",
            problem=BenchmarkProblem(),
            law=DprlLaw(kappa1=1.0, kappa2=1.0, gamma1=0.5, gamma2=1.5),
            numerics=Numerics(dt=ctx.dt, horizon=horizon, settle_tol=SETTLE_TOL, deadzone=1e-12),
        )
        trace, report = run_scenario(scenario)
        ctx.reports.append(report.to_json())
        ctx.expect(
            report.passed,
            f"settling failed: empirical {report.empirical} vs bound {report.analytic_bound}",
            empirical=report.empirical,
            bound=report.analytic_bound,
        )

        window = trace.times >= math.pi + 0.1
        tracking = float(np.max(trace.tracking_error()[window]))
        stationarity, feasibility = trace.kkt_residuals(scenario.build_problem())
        kkt = float(max(np.max(stationarity[window]), np.max(feasibility[window])))
        ctx.expect(
            tracking <= TRACKING_LIMIT,
            f"max ||z - z*|| = {tracking:.3e} after pi + 0.1",
            tracking=tracking,
        )
        ctx.expect(kkt <= KKT_LIMIT, f"max KKT residual = {kkt:.3e} after pi + 0.1", kkt=kkt)
