"""Settling-time checks for the power-exponential laws."""

from ers_tznn.laws import (
    DprlAltLaw,
    FractionalExpLaw,
    PiecewiseExpALaw,
    PiecewiseExpBLaw,
    TwoPhasePeLaw,
)
from ers_tznn.settle import two_phase_pe_settling_time, uniform_bound
from ers_tznn.verification.base import BaseCheck, CheckContext
from ers_tznn.verification.checks.common import (
    compare_bound,
    compare_exact,
    log_grid,
    settling_times,
)


class TwoPhaseExactCheck(BaseCheck):
    name = "twophase-exact"
    description = "Two-phase power-exponential law matches all four exact branches"
    criterion = 8

    def evaluate(self, ctx: CheckContext) -> None:
        seen = set()
        for rho in (0.0, 1.0):
            for estar in ctx.pick((0.5, 2.0), (0.5, 1.0, 2.0)):
                law = TwoPhasePeLaw(rho=rho, kappa=1.0, gamma1=0.5, gamma2=1.5, estar=estar)
                e0s = (0.25 * estar, estar, 4.0 * estar)
                estimates = [
                    two_phase_pe_settling_time(rho, 1.0, 0.5, 1.5, estar, e0) for e0 in e0s
                ]
                seen.update(e.formula_id for e in estimates)
                compare_exact(ctx, f"TwoPhasePE(r={rho:g},e*={estar:g})", law, e0s, estimates)
        ctx.expect(len(seen) == 4, f"only branches {sorted(seen)} exercised", branches=sorted(seen))


class TwoPhaseOrderingCheck(BaseCheck):
    name = "twophase-vs-dprlalt"
    description = "Two-phase law never settles later than DPRLalt with the same total gain"
    criterion = 9

    def evaluate(self, ctx: CheckContext) -> None:
        e0s = (0.01, 0.1, 1.0, 10.0, 100.0)
        two_phase = TwoPhasePeLaw(rho=1.0, kappa=2.0, gamma1=0.5, gamma2=1.5, estar=1.0)
        dprl_alt = DprlAltLaw(rho=1.0, kappa1=1.0, kappa2=1.0, gamma1=0.5, gamma2=1.5)
        fast = settling_times(two_phase, e0s, ctx.dt)
        slow = settling_times(dprl_alt, e0s, ctx.dt)
        for e0, t_two_phase, t_dprl_alt in zip(e0s, fast, slow):
            ok = (
                t_two_phase is not None
                and t_dprl_alt is not None
                and t_two_phase <= t_dprl_alt + ctx.dt
            )
            ctx.expect(
                ok,
                f"e0={e0:g}: TwoPhasePE {t_two_phase} later than DPRLalt {t_dprl_alt}",
                e0=e0,
                two_phase=t_two_phase,
                dprl_alt=t_dprl_alt,
            )


class ExponentialBoundCheck(BaseCheck):
    name = "exponential-bounds"
    description = "Piecewise and fractional exponent bounds dominate simulation"
    criterion = 10

    def evaluate(self, ctx: CheckContext) -> None:
        e0s = log_grid(1e-3, 1e3, ctx.pick(4, 7))
        for delta in ctx.pick((0.5,), (0.25, 0.5, 0.75)):
            for law_class in (PiecewiseExpALaw, PiecewiseExpBLaw):
                law = law_class(
                    rho=1.0, kappa=1.0, gamma1=0.5, gamma2=1.5, estar=1.0, delta=delta
                )
                compare_bound(ctx, f"{law.type}(d={delta:g})", law, e0s, uniform_bound(law))

        for rho in (1.0, 0.0):
            for beta in ctx.pick((3.0,), (3.0, 4.0)):
                for m in (1, 2):
                    law = FractionalExpLaw(
                        rho=rho, kappa=1.0, alpha=0.5, beta=beta, m=m, estar=1.0
                    )
                    name = f"FractionalExp(r={rho:g},b={beta:g},m={m})"
                    compare_bound(ctx, name, law, e0s, uniform_bound(law))
