"""Reach time of the perturbed Lyapunov inequality."""

from ers_tznn.dynamics import lyapunov_reach_time
from ers_tznn.settle import lemma1_reach_time
from ers_tznn.verification.base import BaseCheck, CheckContext

V0 = 10.0
DELTA = 0.1


class LyapunovReachCheck(BaseCheck):
    name = "lyapunov-reach"
    description = "Integrated equality dynamics enter the ultimate region before the formula time"
    criterion = 14

    def evaluate(self, ctx: CheckContext) -> None:
        for K in (1.0, 2.0):
            for R in (1.0, 2.0):
                for alpha in (0.5, 1.0, 2.0):
                    estimate = lemma1_reach_time(K, R, alpha, DELTA, V0)
                    measured = lyapunov_reach_time(K, R, alpha, DELTA, V0)
                    ok = measured is not None and measured <= estimate.time.time * (1 + 1e-9)
                    ctx.expect(
                        ok,
                        f"K={K:g} R={R:g} alpha={alpha:g}: entered at {measured} "
                        f"after {estimate.time.formula_id} time {estimate.time.time:.6g}",
                        K=K,
                        R=R,
                        alpha=alpha,
                        radius=estimate.radius,
                        formula=estimate.time.time,
                        measured=measured,
                    )
