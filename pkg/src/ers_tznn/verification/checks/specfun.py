"""Special-function accuracy against quadrature."""

import numpy as np
from scipy import integrate, special

from ers_tznn.specfun import reg_inc_beta
from ers_tznn.verification.base import BaseCheck, CheckContext


def quadrature_inc_beta(x: float, p: float, q: float) -> float:
    """I(x, p, q) by adaptive quadrature with the algebraic endpoint weight.

    The lower tail is integrated directly; above 1/2 the complement is used so
    the (1 - t)^(q - 1) factor never approaches its singularity.
    """
    if x > 0.5:
        return 1.0 - quadrature_inc_beta(1.0 - x, q, p)
    value, _ = integrate.quad(
        lambda t: (1.0 - t) ** (q - 1.0),
        0.0,
        x,
        weight="alg",
        wvar=(p - 1.0, 0.0),
        epsabs=1e-14,
        epsrel=1e-12,
        limit=200,
    )
    return value / special.beta(p, q)


class IncompleteBetaCheck(BaseCheck):
    """Regularized incomplete Beta against quadrature and the reflection identity."""

    name = "incomplete-beta"
    description = "reg_inc_beta matches quadrature to 1e-9; I(x,p,q) + I(1-x,q,p) = 1"
    criterion = 1

    def evaluate(self, ctx: CheckContext) -> None:
        rng = np.random.default_rng(20240601)
        samples = 100
        worst_error = worst_symmetry = 0.0
        for _ in range(samples):
            x = float(rng.uniform(0.0, 1.0))
            p = float(rng.uniform(0.1, 20.0))
            q = float(rng.uniform(0.1, 20.0))
            value = reg_inc_beta(x, p, q)
            error = abs(value - quadrature_inc_beta(x, p, q))
            symmetry = abs(value + reg_inc_beta(1.0 - x, q, p) - 1.0)
            worst_error = max(worst_error, error)
            worst_symmetry = max(worst_symmetry, symmetry)
            ctx.expect(
                error <= 1e-9 and symmetry <= 1e-12,
                f"I({x:.6g}, {p:.6g}, {q:.6g}): quadrature error {error:.2e}, "
                f"symmetry residual {symmetry:.2e}",
                x=x,
                p=p,
                q=q,
                value=value,
                error=error,
                symmetry=symmetry,
            )
        ctx.notes.append(f"max error {worst_error:.2e}, max symmetry residual {worst_symmetry:.2e}")
