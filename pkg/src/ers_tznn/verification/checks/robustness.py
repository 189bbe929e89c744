"""Disturbance rejection on the benchmark QP."""

from typing import List, Tuple

from ers_tznn.compensate import (
    GainSplit,
    SignumCompensation,
    SmoothCompensation,
    certified_radius,
    residual_radius,
)
from ers_tznn.dynamics import (
    BoundedNoise,
    ConstantDisturbance,
    SinusoidDisturbance,
    empirical_residual,
)
from ers_tznn.laws import BaseLaw, DprlAltLaw, FractionalExpLaw, TwoPhasePeLaw
from ers_tznn.scenario import BenchmarkProblem, Numerics, Scenario, run_scenario
from ers_tznn.verification.base import BaseCheck, CheckContext
from ers_tznn.verification.checks.common import SETTLE_TOL

VARPI = 1.0
DISTURBANCE_LEVEL = 0.9


def residual_laws() -> List[Tuple[str, BaseLaw]]:
    """One law for each closed-form radius case."""
    return [
        ("i", DprlAltLaw(rho=1.0, kappa1=1.0, kappa2=1.0, gamma1=0.5, gamma2=1.5)),
        ("ii", TwoPhasePeLaw(rho=1.0, kappa=1.0, gamma1=0.5, gamma2=1.5, estar=1.0)),
        ("iii", FractionalExpLaw(rho=1.0, kappa=1.0, alpha=0.5, beta=3.0, m=1, estar=1.0)),
    ]


def disturbances():
    return [
        ConstantDisturbance(c=DISTURBANCE_LEVEL),
        SinusoidDisturbance(amplitude=DISTURBANCE_LEVEL),
        BoundedNoise(bound=DISTURBANCE_LEVEL, seed=11),
    ]


def _cells(ctx: CheckContext):
    """(case, law, disturbance) cells: the full product, or one disturbance per law."""
    laws = residual_laws()
    dists = disturbances()
    if ctx.full:
        return [(case, law, dist) for case, law in laws for dist in dists]
    return [(case, law, dists[i % len(dists)]) for i, (case, law) in enumerate(laws)]


def _numerics(ctx: CheckContext) -> Numerics:
    return Numerics(
        dt=ctx.pick(2e-3, ctx.dt),
        horizon=ctx.pick(6.0, 10.0),
        settle_tol=SETTLE_TOL,
        deadzone=1e-12,
    )


class SmoothResidualCheck(BaseCheck):
    name = "smooth-residual"
    description = "Smooth compensation keeps the QP error inside the certified residual radius"
    criterion = 11

    def evaluate(self, ctx: CheckContext) -> None:
        numerics = _numerics(ctx)
        epsilons = (1e-2, 1e-3)

        for case, law in residual_laws():
            split = GainSplit.half_of(law)
            printed = [residual_radius(law, eps, split) for eps in epsilons]
            certified = [
                certified_radius(law, SmoothCompensation(varpi=VARPI, epsilon=eps), split)
                for eps in epsilons
            ]
            ctx.expect(
                printed[1] < printed[0] and certified[1] < certified[0],
                f"case {case}: radius does not shrink with epsilon "
                f"(printed {printed}, certified {certified})",
                case=case,
                printed=printed,
                certified=certified,
            )

        for case, law, dist in _cells(ctx):
            for eps in epsilons:
                scenario = Scenario(
                    name=f"residual-{case}-{dist.type}-eps={eps:g}",
                    problem=BenchmarkProblem(),
                    law=law,
                    comp=SmoothCompensation(varpi=VARPI, epsilon=eps),
                    dist=dist,
                    numerics=numerics,
                )
                _, report = run_scenario(scenario)
                ctx.reports.append(report.to_json())
                predicted = report.residual_predicted
                ctx.expect(
                    predicted is not None and report.residual_measured <= predicted,
                    f"{scenario.name}: measured {report.residual_measured:.3e} "
                    f"outside certified radius {predicted}",
                    scenario=scenario.name,
                    measured=report.residual_measured,
                    certified=predicted,
                    printed=report.residual_printed,
                    after=report.residual_after,
                )


class SignumRejectionCheck(BaseCheck):
    name = "signum-rejection"
    description = "Signum compensation rejects bounded disturbances up to discretization chatter"
    criterion = 12

    def evaluate(self, ctx: CheckContext) -> None:
        numerics = _numerics(ctx)
        band = max(numerics.settle_tol, 2.0 * VARPI * numerics.dt)
        for case, law, dist in _cells(ctx):
            scenario = Scenario(
                name=f"signum-{case}-{dist.type}",
                problem=BenchmarkProblem(),
                law=law,
                comp=SignumCompensation(varpi=VARPI),
                dist=dist,
                numerics=numerics,
            )
            trace, report = run_scenario(scenario)
            ctx.reports.append(report.to_json())
            after = report.analytic.time if report.analytic is not None else numerics.horizon / 2
            if not after < numerics.horizon:
                after = numerics.horizon / 2
            measured = empirical_residual(trace, after)
            ctx.expect(
                report.passed and measured <= band,
                f"{scenario.name}: sup |e| = {measured:.3e} after t={after:.3g} exceeds {band:.3e}",
                scenario=scenario.name,
                measured=measured,
                band=band,
                chattering=report.chattering,
            )
