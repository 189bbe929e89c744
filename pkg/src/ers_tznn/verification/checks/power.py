"""Settling-time checks for the power-rate laws."""

import math

import numpy as np

from ers_tznn.laws import DprlAltLaw, DprlLaw, SprlAltLaw, SprlLaw
from ers_tznn.settle import (
    dprl_alt_settling_bound,
    dprl_alt_sum2_bound,
    dprl_alt_sum2_settling_time,
    dprl_arctan_form,
    dprl_cubic_form,
    dprl_settling_bound,
    dprl_settling_bound_3,
    dprl_settling_bound_n,
    dprl_settling_time,
    dprl_settling_time_general,
    sprl_alt_settling_time,
    sprl_settling_time,
)
from ers_tznn.verification.base import BaseCheck, CheckContext
from ers_tznn.verification.checks.common import compare_bound, compare_exact, settling_times

E0_GRID = (0.01, 0.1, 1.0, 4.0, 10.0, 100.0)


class SprlExactCheck(BaseCheck):
    name = "sprl-exact"
    description = "SPRL empirical settling matches the exact time"
    criterion = 2

    def evaluate(self, ctx: CheckContext) -> None:
        kappas = ctx.pick((0.5, 2.0), (0.5, 1.0, 2.0))
        gammas = ctx.pick((1 / 3, 2 / 3), (1 / 3, 1 / 2, 2 / 3))
        e0s = ctx.pick((0.01, 1.0, 10.0), E0_GRID)
        for kappa in kappas:
            for gamma in gammas:
                law = SprlLaw(kappa=kappa, gamma=gamma)
                estimates = [sprl_settling_time(kappa, gamma, e0) for e0 in e0s]
                compare_exact(ctx, f"SPRL(k={kappa:g},g={gamma:.3g})", law, e0s, estimates)


class SprlAltExactCheck(BaseCheck):
    name = "sprlalt-exact"
    description = "SPRLalt matches its exact time and never settles later than SPRL"
    criterion = 3

    def evaluate(self, ctx: CheckContext) -> None:
        rhos = ctx.pick((1.0,), (0.5, 1.0, 2.0))
        kappas = ctx.pick((0.5, 2.0), (0.5, 1.0, 2.0))
        gammas = ctx.pick((1 / 3, 2 / 3), (1 / 3, 1 / 2, 2 / 3))
        e0s = ctx.pick((0.01, 1.0, 10.0), E0_GRID)
        for kappa in kappas:
            for gamma in gammas:
                plain = settling_times(SprlLaw(kappa=kappa, gamma=gamma), e0s, ctx.dt)
                for rho in rhos:
                    law = SprlAltLaw(rho=rho, kappa=kappa, gamma=gamma)
                    estimates = [sprl_alt_settling_time(rho, kappa, gamma, e0) for e0 in e0s]
                    name = f"SPRLalt(r={rho:g},k={kappa:g},g={gamma:.3g})"
                    faster = compare_exact(ctx, name, law, e0s, estimates)
                    for e0, with_linear, without in zip(e0s, faster, plain):
                        ok = (
                            with_linear is not None
                            and without is not None
                            and with_linear <= without + ctx.dt
                        )
                        ctx.expect(
                            ok,
                            f"{name} e0={e0:g}: {with_linear} later than SPRL {without}",
                            e0=e0,
                            sprl_alt=with_linear,
                            sprl=without,
                        )


class DprlExactCheck(BaseCheck):
    name = "dprl-exact"
    description = "DPRL closed forms agree with the general form and with simulation"
    criterion = 4

    def evaluate(self, ctx: CheckContext) -> None:
        # Closed forms against the incomplete-Beta form on their slices
        for kappa1 in (0.5, 1.0, 2.0):
            for kappa2 in (0.5, 1.0, 2.0):
                for gamma1 in (0.25, 0.5, 0.75):
                    for e0 in (0.01, 1.0, 100.0, 1e6):
                        for closed, gamma2 in (
                            (dprl_arctan_form, 2.0 - gamma1),
                            (dprl_cubic_form, 3.0 - 2.0 * gamma1),
                        ):
                            slice_value = closed(kappa1, kappa2, gamma1, e0).time
                            general = dprl_settling_time_general(
                                kappa1, kappa2, gamma1, gamma2, e0
                            ).time
                            gap = abs(slice_value - general)
                            ctx.expect(
                                gap <= 1e-9 * max(1.0, general),
                                f"{closed.__name__}({kappa1:g},{kappa2:g},{gamma1:g},{e0:g}) "
                                f"differs from the general form by {gap:.2e}",
                                form=closed.__name__,
                                gap=gap,
                            )

        kappas = ctx.pick((1.0,), (0.5, 1.0, 2.0))
        exponents = ctx.pick(((0.5, 1.5), (0.25, 2.0)), ((0.5, 1.5), (0.5, 2.0), (0.25, 1.75)))
        e0s = ctx.pick((0.01, 1.0, 100.0), E0_GRID)
        for kappa in kappas:
            for gamma1, gamma2 in exponents:
                law = DprlLaw(kappa1=kappa, kappa2=kappa, gamma1=gamma1, gamma2=gamma2)
                estimates = [dprl_settling_time(kappa, kappa, gamma1, gamma2, e0) for e0 in e0s]
                compare_exact(ctx, f"DPRL(k={kappa:g},{gamma1:g},{gamma2:g})", law, e0s, estimates)


class DprlFixedTimeCheck(BaseCheck):
    name = "dprl-fixed-time"
    description = "DPRL settles within its uniform bounds for arbitrarily large initial errors"
    criterion = 5

    def evaluate(self, ctx: CheckContext) -> None:
        e0s = (1.0, 1e2, 1e4, 1e6)
        law = DprlLaw(kappa1=1.0, kappa2=1.0, gamma1=0.5, gamma2=1.5)
        bound = dprl_settling_bound(1.0, 1.0, 0.5, 1.5)
        ctx.expect(
            abs(bound.time - math.pi) <= 1e-12,
            f"{bound.formula_id} gives {bound.time!r}, expected pi",
            bound=bound.time,
        )
        compare_bound(ctx, "DPRL(1,1,0.5,1.5)", law, e0s, bound)

        # gamma2 - gamma1 = n (1 - gamma1); n = 3 coincides with 2 gamma1 + gamma2 = 3
        cubic_cases = ctx.pick(((1.0, 2.0, 0.5),), ((1.0, 2.0, 0.5), (2.0, 1.0, 0.25)))
        for kappa1, kappa2, gamma1 in cubic_cases:
            n = 3.0
            gamma2 = gamma1 + n * (1.0 - gamma1)
            law = DprlLaw(kappa1=kappa1, kappa2=kappa2, gamma1=gamma1, gamma2=gamma2)
            bound_n = dprl_settling_bound_n(kappa1, kappa2, gamma1, n)
            bound_3 = dprl_settling_bound_3(kappa1, kappa2, gamma1)
            ctx.expect(
                abs(bound_n.time - bound_3.time) <= 1e-12 * bound_3.time,
                f"n=3 bound {bound_n.time!r} differs from the cubic-slice bound {bound_3.time!r}",
                bound_n=bound_n.time,
                bound_3=bound_3.time,
            )
            name = f"DPRL({kappa1:g},{kappa2:g},{gamma1:g},{gamma2:g})"
            compare_bound(ctx, name, law, e0s, bound_n)

        spread_cases = ctx.pick(
            ((1.0, 1.0, 0.5, 4.0),), ((1.0, 1.0, 0.5, 4.0), (0.5, 2.0, 0.4, 2.5))
        )
        for kappa1, kappa2, gamma1, n in spread_cases:
            gamma2 = gamma1 + n * (1.0 - gamma1)
            law = DprlLaw(kappa1=kappa1, kappa2=kappa2, gamma1=gamma1, gamma2=gamma2)
            compare_bound(
                ctx,
                f"DPRL({kappa1:g},{kappa2:g},{gamma1:g},{gamma2:g})",
                law,
                e0s,
                dprl_settling_bound_n(kappa1, kappa2, gamma1, n),
            )


class DprlAltBoundCheck(BaseCheck):
    name = "dprlalt-bound"
    description = "DPRLalt bound dominates simulation and improves on the bound without rho"
    criterion = 6

    def evaluate(self, ctx: CheckContext) -> None:
        rng = np.random.default_rng(6)
        for i in range(ctx.pick(20, 100)):
            rho, kappa1, kappa2 = (float(v) for v in rng.uniform(0.5, 2.0, size=3))
            gamma1 = float(rng.uniform(0.2, 0.8))
            gamma2 = float(rng.uniform(1.2, 2.5))
            e0 = float(10.0 ** rng.uniform(-2.0, 4.0))
            law = DprlAltLaw(rho=rho, kappa1=kappa1, kappa2=kappa2, gamma1=gamma1, gamma2=gamma2)
            bound = dprl_alt_settling_bound(rho, kappa1, kappa2, gamma1, gamma2)
            without_rho = dprl_settling_bound(kappa1, kappa2, gamma1, gamma2)
            ctx.expect(
                bound.time <= without_rho.time * (1.0 + 1e-12),
                f"case {i}: rho-aware bound {bound.time:.6g} exceeds {without_rho.time:.6g}",
                case=i,
                bound=bound.time,
                bound_without_rho=without_rho.time,
            )
            compare_bound(ctx, f"case{i}-DPRLalt", law, (e0,), bound)


class DprlAltSum2Check(BaseCheck):
    name = "dprlalt-sum2"
    description = "DPRLalt with gamma1 + gamma2 = 2: the three regimes match simulation"
    criterion = 7

    def evaluate(self, ctx: CheckContext) -> None:
        e0s = (0.01, 1.0, 100.0)
        gamma1 = 0.5
        for rho in (1.0, 2.0, 3.0):
            law = DprlAltLaw(rho=rho, kappa1=1.0, kappa2=1.0, gamma1=gamma1, gamma2=2.0 - gamma1)
            estimates = [dprl_alt_sum2_settling_time(rho, 1.0, 1.0, gamma1, e0) for e0 in e0s]
            measured = compare_exact(ctx, f"DPRLalt(r={rho:g})", law, e0s, estimates)
            uniform = dprl_alt_sum2_bound(rho, 1.0, 1.0, gamma1)
            for e0, estimate, empirical in zip(e0s, estimates, measured):
                ok = (
                    estimate.time <= uniform.time
                    and empirical is not None
                    and empirical <= uniform.time + 10.0 * ctx.dt
                )
                ctx.expect(
                    ok,
                    f"DPRLalt(r={rho:g}) e0={e0:g}: {uniform.formula_id} {uniform.time:.6g} "
                    f"below exact {estimate.time:.6g} or empirical {empirical}",
                    e0=e0,
                    formula_id=uniform.formula_id,
                    uniform=uniform.time,
                )
