"""Settling-time functions and fixed-time bounds for the law catalog.

Every function returns a :class:`SettlingEstimate` tagged with the formula it
used. ``kind="exact"`` marks a closed form of the settling time t_s(e0);
``kind="upper_bound"`` marks an estimate that dominates it.
"""

import logging
import math
from enum import Enum
from typing import List, Literal, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy.integrate import quad

from ers_tznn.config import settings
from ers_tznn.exceptions import ParameterError, UnsupportedOperationError
from ers_tznn.laws import (
    BaseLaw,
    DprlAltLaw,
    DprlLaw,
    FractionalExpLaw,
    PiecewiseExpALaw,
    PiecewiseExpBLaw,
    PiecewiseExpLaw,
    SprlAltLaw,
    SprlLaw,
    TwoPhasePeLaw,
)
from ers_tznn.specfun import reg_inc_beta

logger = logging.getLogger(__name__)

# Closed vocabulary of formula identifiers
FORMULA_IDS = frozenset({
    "sprr1.ts",
    "sprr2.ts",
    "key.ts",
    "key.ts.2",
    "key.ts.3",
    "key.ts.bound",
    "key.ts.bound.n",
    "key.ts.bound.2",
    "key.ts.bound.3",
    "rqp.tg",
    "1qp.ts.1",
    "1qp.ts.2",
    "1qp.ts.3",
    "1qp.tc.1",
    "1qp.tc.2",
    "1qp.tc.3",
    "twophase.ts.linear.far",
    "twophase.ts.linear.near",
    "twophase.ts.pure.far",
    "twophase.ts.pure.near",
    "fastqp.t1t2",
    "fastqp.t1t2.b",
    "b.fastqfe.t1t2",
    "b.qfe.t1t2",
    "reach.sublinear",
    "reach.linear",
    "reach.superlinear",
    "quadrature",
})


class EstimateKind(str, Enum):
    """Whether an estimate is the settling time itself or a bound on it."""
    EXACT = "exact"
    UPPER_BOUND = "upper_bound"


class SettlingEstimate(BaseModel):
    """A settling time (or bound) together with the formula that produced it."""

    model_config = ConfigDict(frozen=True)

    kind: EstimateKind
    time: float = Field(ge=0)
    formula_id: str
    warnings: Tuple[str, ...] = ()

    @field_validator("formula_id")
    @classmethod
    def _known_formula(cls, value: str) -> str:
        if value not in FORMULA_IDS:
            raise ValueError(f"unknown formula id {value!r}")
        return value


class ReachEstimate(BaseModel):
    """Radius of the ultimate region of a perturbed Lyapunov inequality and the time to enter it."""

    model_config = ConfigDict(frozen=True)

    radius: float = Field(ge=0)
    time: SettlingEstimate


# ---------------------------------------------------------------------------
# Argument checks
# ---------------------------------------------------------------------------

def _positive(name: str, value: float) -> None:
    if not (value > 0 and math.isfinite(value)):
        raise ParameterError(name, f"must be > 0, got {value!r}")


def _nonnegative(name: str, value: float) -> None:
    if not (value >= 0 and math.isfinite(value)):
        raise ParameterError(name, f"must be >= 0, got {value!r}")


def _unit_open(name: str, value: float) -> None:
    if not 0 < value < 1:
        raise ParameterError(name, f"must lie in (0, 1), got {value!r}")


def _above_one(name: str, value: float) -> None:
    if not (value > 1 and math.isfinite(value)):
        raise ParameterError(name, f"must be > 1, got {value!r}")


def _dprl_ranges(kappa1: float, kappa2: float, gamma1: float, gamma2: float) -> None:
    _positive("kappa1", kappa1)
    _positive("kappa2", kappa2)
    _unit_open("gamma1", gamma1)
    _above_one("gamma2", gamma2)


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= settings.regime_tolerance * max(1.0, abs(a), abs(b))


def _exact(time: float, formula_id: str, warnings: Tuple[str, ...] = ()) -> SettlingEstimate:
    return SettlingEstimate(
        kind=EstimateKind.EXACT, time=max(0.0, time), formula_id=formula_id, warnings=warnings
    )


def _bound(time: float, formula_id: str, warnings: Tuple[str, ...] = ()) -> SettlingEstimate:
    return SettlingEstimate(
        kind=EstimateKind.UPPER_BOUND, time=max(0.0, time), formula_id=formula_id, warnings=warnings
    )


def _power(base: float, exponent: float) -> float:
    """base ** exponent, saturating to inf instead of raising OverflowError."""
    try:
        return base ** exponent
    except OverflowError:
        return math.inf


def _csc_pi(theta: float) -> Tuple[float, Tuple[str, ...]]:
    """csc(theta pi) plus a conditioning warning when theta approaches 0 or 1."""
    guard = settings.theta_guard
    warnings: Tuple[str, ...] = ()
    if not guard <= theta <= 1.0 - guard:
        warnings = (f"csc(theta*pi) ill-conditioned for theta={theta:.3e}",)
        logger.warning(warnings[0])
    return 1.0 / math.sin(theta * math.pi), warnings


# ---------------------------------------------------------------------------
# Single power-rate laws
# ---------------------------------------------------------------------------

def sprl_settling_time(kappa: float, gamma: float, e0: float) -> SettlingEstimate:
    """Exact settling time of e' = -kappa sig^gamma(e): |e0|^(1-gamma) / (kappa (1-gamma))."""
    _positive("kappa", kappa)
    _unit_open("gamma", gamma)
    return _exact(abs(e0) ** (1.0 - gamma) / (kappa * (1.0 - gamma)), "sprr1.ts")


def sprl_alt_settling_time(rho: float, kappa: float, gamma: float, e0: float) -> SettlingEstimate:
    """Exact settling time of e' = -rho e - kappa sig^gamma(e)."""
    _positive("rho", rho)
    _positive("kappa", kappa)
    _unit_open("gamma", gamma)
    y = abs(e0) ** (1.0 - gamma)
    return _exact(math.log1p(rho / kappa * y) / (rho * (1.0 - gamma)), "sprr2.ts")


# ---------------------------------------------------------------------------
# Double power-rate laws
# ---------------------------------------------------------------------------

def dprl_settling_time_general(
    kappa1: float, kappa2: float, gamma1: float, gamma2: float, e0: float
) -> SettlingEstimate:
    """Incomplete-Beta form of the DPRL settling time, valid for every exponent pair."""
    _dprl_ranges(kappa1, kappa2, gamma1, gamma2)
    spread = gamma2 - gamma1
    theta = (1.0 - gamma1) / spread
    csc, warnings = _csc_pi(theta)
    if e0 == 0:
        return _exact(0.0, "key.ts", warnings)

    grown = kappa2 * _power(abs(e0), spread)
    if math.isinf(grown):
        one_minus_c = 1.0
    else:
        one_minus_c = grown / (grown + kappa1)
    scale = math.pi * csc / (kappa1 * spread) * (kappa1 / kappa2) ** theta
    return _exact(scale * reg_inc_beta(one_minus_c, theta, 1.0 - theta), "key.ts", warnings)


def dprl_arctan_form(kappa1: float, kappa2: float, gamma1: float, e0: float) -> SettlingEstimate:
    """Closed form on the slice gamma1 + gamma2 = 2."""
    _dprl_ranges(kappa1, kappa2, gamma1, 2.0 - gamma1)
    y = abs(e0) ** (1.0 - gamma1)
    root = math.sqrt(kappa1 * kappa2)
    return _exact(math.atan(math.sqrt(kappa2 / kappa1) * y) / (root * (1.0 - gamma1)), "key.ts.2")


def dprl_cubic_form(kappa1: float, kappa2: float, gamma1: float, e0: float) -> SettlingEstimate:
    """Closed form on the slice 2 gamma1 + gamma2 = 3."""
    _dprl_ranges(kappa1, kappa2, gamma1, 3.0 - 2.0 * gamma1)
    a = (kappa1 / kappa2) ** (1.0 / 3.0)
    y = abs(e0) ** (1.0 - gamma1)
    sqrt3 = math.sqrt(3.0)
    if math.isinf(y):
        bracket = 4.0 * sqrt3 * math.pi / 3.0
    else:
        bracket = (
            math.log((y * y + 2.0 * a * y + a * a) / (y * y - a * y + a * a))
            + 2.0 * sqrt3 * math.atan(2.0 * sqrt3 / (3.0 * a) * (y - a / 2.0))
            + sqrt3 * math.pi / 3.0
        )
    return _exact(bracket / (6.0 * kappa2 * a * a * (1.0 - gamma1)), "key.ts.3")


def dprl_settling_time(
    kappa1: float, kappa2: float, gamma1: float, gamma2: float, e0: float
) -> SettlingEstimate:
    """Exact DPRL settling time, using a closed form on the slices where one exists."""
    _dprl_ranges(kappa1, kappa2, gamma1, gamma2)
    if _close(gamma1 + gamma2, 2.0):
        return dprl_arctan_form(kappa1, kappa2, gamma1, e0)
    if _close(2.0 * gamma1 + gamma2, 3.0):
        return dprl_cubic_form(kappa1, kappa2, gamma1, e0)
    return dprl_settling_time_general(kappa1, kappa2, gamma1, gamma2, e0)


def dprl_settling_bound_n(
    kappa1: float, kappa2: float, gamma1: float, n: float
) -> SettlingEstimate:
    """Uniform bound written for gamma2 - gamma1 = n (1 - gamma1)."""
    _positive("kappa1", kappa1)
    _positive("kappa2", kappa2)
    _unit_open("gamma1", gamma1)
    _above_one("n", n)
    time = (
        math.pi / (n * kappa1 * (1.0 - gamma1) * math.sin(math.pi / n))
        * (kappa1 / kappa2) ** (1.0 / n)
    )
    return _bound(time, "key.ts.bound.n")


def dprl_settling_bound_3(kappa1: float, kappa2: float, gamma1: float) -> SettlingEstimate:
    """Uniform bound on the slice 2 gamma1 + gamma2 = 3."""
    _positive("kappa1", kappa1)
    _positive("kappa2", kappa2)
    _unit_open("gamma1", gamma1)
    time = (
        2.0 * math.sqrt(3.0) * math.pi / (9.0 * kappa2 * (1.0 - gamma1))
        * (kappa1 / kappa2) ** (-2.0 / 3.0)
    )
    return _bound(time, "key.ts.bound.3")


def dprl_settling_bound(
    kappa1: float, kappa2: float, gamma1: float, gamma2: float
) -> SettlingEstimate:
    """Uniform (fixed-time) bound of the DPRL settling time."""
    _dprl_ranges(kappa1, kappa2, gamma1, gamma2)
    if _close(gamma1 + gamma2, 2.0):
        time = math.pi / (2.0 * math.sqrt(kappa1 * kappa2) * (1.0 - gamma1))
        return _bound(time, "key.ts.bound.2")
    if _close(2.0 * gamma1 + gamma2, 3.0):
        return dprl_settling_bound_3(kappa1, kappa2, gamma1)

    spread = gamma2 - gamma1
    theta = (1.0 - gamma1) / spread
    csc, warnings = _csc_pi(theta)
    time = math.pi * csc / (kappa1 * spread) * (kappa1 / kappa2) ** theta
    return _bound(time, "key.ts.bound", warnings)


def dprl_alt_settling_bound(
    rho: float, kappa1: float, kappa2: float, gamma1: float, gamma2: float
) -> SettlingEstimate:
    """Uniform bound for the DPRL law with a linear term.

    The linear term is credited to the super-linear power below |e| = 1 and to
    the sub-linear power above it, which gives a tighter bound than dropping it.
    """
    _positive("rho", rho)
    _dprl_ranges(kappa1, kappa2, gamma1, gamma2)
    spread = gamma2 - gamma1
    theta = (1.0 - gamma1) / spread
    csc, warnings = _csc_pi(theta)
    total = rho + kappa1 + kappa2
    b = (rho + kappa1) / total
    one_minus_c = (rho + kappa2) / total

    inner = (
        math.pi * csc / (kappa1 * spread) * (kappa1 / (rho + kappa2)) ** theta
        * reg_inc_beta(one_minus_c, theta, 1.0 - theta)
    )
    outer = (
        math.pi * csc / (kappa2 * spread) * (kappa2 / (rho + kappa1)) ** (1.0 - theta)
        * reg_inc_beta(b, 1.0 - theta, theta)
    )
    return _bound(inner + outer, "rqp.tg", warnings)


def _sum2_regime(rho: float, kappa1: float, kappa2: float) -> Tuple[float, int]:
    """a = 4 kappa1 kappa2 - rho^2 and its sign (0 within tolerance)."""
    a = 4.0 * kappa1 * kappa2 - rho * rho
    tolerance = settings.regime_tolerance * max(1.0, 4.0 * kappa1 * kappa2)
    if abs(a) <= tolerance:
        return a, 0
    return a, 1 if a > 0 else -1


def _sum2_checks(rho: float, kappa1: float, kappa2: float, gamma1: float) -> None:
    _nonnegative("rho", rho)
    _positive("kappa1", kappa1)
    _positive("kappa2", kappa2)
    _unit_open("gamma1", gamma1)


def dprl_alt_sum2_settling_time(
    rho: float, kappa1: float, kappa2: float, gamma1: float, e0: float
) -> SettlingEstimate:
    """Exact settling time of the DPRL law with linear term when gamma1 + gamma2 = 2."""
    _sum2_checks(rho, kappa1, kappa2, gamma1)
    a, regime = _sum2_regime(rho, kappa1, kappa2)
    y = abs(e0) ** (1.0 - gamma1)
    tail = 1.0 - gamma1

    if regime > 0:
        root = math.sqrt(a)
        if math.isinf(y):
            angle = math.atan2(root, rho)
        else:
            angle = math.atan2(root * y, 2.0 * kappa1 + rho * y)
        return _exact(2.0 / (tail * root) * angle, "1qp.ts.1")
    if regime < 0:
        root = math.sqrt(-a)
        if math.isinf(y):
            ratio = (rho + root) / (rho - root)
        else:
            ratio = ((rho + root) * (2.0 * kappa2 * y + rho - root)) / (
                (rho - root) * (2.0 * kappa2 * y + rho + root)
            )
        return _exact(math.log(ratio) / (tail * root), "1qp.ts.2")
    if math.isinf(y):
        return _exact(2.0 / (rho * tail), "1qp.ts.3")
    return _exact(4.0 / (tail * rho) * kappa2 * y / (2.0 * kappa2 * y + rho), "1qp.ts.3")


def dprl_alt_sum2_bound(
    rho: float, kappa1: float, kappa2: float, gamma1: float
) -> SettlingEstimate:
    """Uniform bound (the e0 -> infinity limit) on the gamma1 + gamma2 = 2 slice."""
    _sum2_checks(rho, kappa1, kappa2, gamma1)
    a, regime = _sum2_regime(rho, kappa1, kappa2)
    tail = 1.0 - gamma1

    if regime > 0:
        root = math.sqrt(a)
        return _bound(2.0 / (tail * root) * math.atan2(root, rho), "1qp.tc.1")
    if regime < 0:
        root = math.sqrt(-a)
        return _bound(math.log((rho + root) / (rho - root)) / (tail * root), "1qp.tc.2")
    return _bound(2.0 / (rho * tail), "1qp.tc.3")


# ---------------------------------------------------------------------------
# Power-exponential laws
# ---------------------------------------------------------------------------

def two_phase_pe_settling_time(
    rho: float, kappa: float, gamma1: float, gamma2: float, estar: float, e0: float
) -> SettlingEstimate:
    """Exact settling time of the two-phase power-exponential law.

    |e0| = e* is treated with the traveling-phase (|e0| >= e*) formulas.
    """
    _nonnegative("rho", rho)
    _positive("kappa", kappa)
    _unit_open("gamma1", gamma1)
    _above_one("gamma2", gamma2)
    _positive("estar", estar)

    y = abs(e0) / estar
    if rho > 0:
        if y >= 1.0:
            reaching = estar / (rho * (1.0 - gamma1)) * math.log1p(rho / kappa)
            traveling = estar / (rho * (gamma2 - 1.0)) * math.log(
                (1.0 + kappa / rho) / (y ** (1.0 - gamma2) + kappa / rho)
            )
            return _exact(reaching + traveling, "twophase.ts.linear.far")
        time = estar / (rho * (1.0 - gamma1)) * math.log1p(rho / kappa * y ** (1.0 - gamma1))
        return _exact(time, "twophase.ts.linear.near")

    if y >= 1.0:
        time = (
            estar / (kappa * (1.0 - gamma1))
            + estar / (kappa * (gamma2 - 1.0))
            - estar ** gamma2 / (kappa * (gamma2 - 1.0)) * abs(e0) ** (1.0 - gamma2)
        )
        return _exact(time, "twophase.ts.pure.far")
    return _exact(estar / (kappa * (1.0 - gamma1)) * y ** (1.0 - gamma1), "twophase.ts.pure.near")


def piecewise_pe_bound(
    rho: float,
    kappa: float,
    gamma1: float,
    gamma2: float,
    estar: float,
    delta: float,
    variant: Literal["A", "B"],
) -> SettlingEstimate:
    """Uniform bound for the piecewise-exponent laws.

    Raises:
        UnsupportedOperationError: For rho = 0, which has no printed estimate
    """
    _nonnegative("rho", rho)
    _positive("kappa", kappa)
    _unit_open("gamma1", gamma1)
    _above_one("gamma2", gamma2)
    _positive("estar", estar)
    _unit_open("delta", delta)
    if rho == 0:
        raise UnsupportedOperationError("piecewise-exponent bound requires rho > 0")
    if variant not in ("A", "B"):
        raise ParameterError("variant", f"must be 'A' or 'B', got {variant!r}")

    knot = delta if variant == "A" else 1.0 + delta
    ratio = rho / kappa
    time = (
        estar / (rho * (1.0 - gamma1)) * math.log1p(ratio * knot ** (1.0 - gamma1))
        + estar / (rho * (gamma2 - 1.0)) * math.log1p(ratio * knot ** (1.0 - gamma2))
    )
    return _bound(time, "fastqp.t1t2" if variant == "A" else "fastqp.t1t2.b")


def fractional_pe_bound(
    rho: float, kappa: float, alpha: float, beta: float, m: int, estar: float
) -> SettlingEstimate:
    """Uniform bound for the fractional power-exponential law."""
    _nonnegative("rho", rho)
    _positive("kappa", kappa)
    if not 0 <= alpha < 1:
        raise ParameterError("alpha", f"must lie in [0, 1), got {alpha!r}")
    if not beta > 2:
        raise ParameterError("beta", f"must be > 2, got {beta!r}")
    if int(m) != m or m < 1:
        raise ParameterError("m", f"must be a positive integer, got {m!r}")
    _positive("estar", estar)

    floor = math.exp(-beta / (2.0 * m * math.e))
    if rho > 0:
        time = (
            estar / (rho * (beta / 2.0 - 1.0)) * math.log1p(rho / kappa)
            + estar / (rho * (1.0 - alpha)) * math.log1p(rho / (kappa * floor))
        )
        return _bound(time, "b.fastqfe.t1t2")
    time = estar / (kappa * (beta / 2.0 - 1.0)) + estar / (kappa * floor * (1.0 - alpha))
    return _bound(time, "b.qfe.t1t2")


# ---------------------------------------------------------------------------
# Perturbed Lyapunov inequality V' <= -K V^alpha - R V^alpha + Delta
# ---------------------------------------------------------------------------

def lemma1_reach_time(K: float, R: float, alpha: float, Delta: float, V0: float) -> ReachEstimate:
    """Radius (Delta/R)^(1/alpha) of the ultimate region and the time to enter it.

    Returns time 0 when V0 already lies inside the region.
    """
    _positive("K", K)
    _positive("R", R)
    _nonnegative("alpha", alpha)
    _positive("Delta", Delta)
    _nonnegative("V0", V0)

    ratio = Delta / R
    if alpha == 0:
        radius = 0.0 if ratio < 1 else (1.0 if ratio == 1 else math.inf)
    else:
        radius = ratio ** (1.0 / alpha)

    if alpha < 1:
        formula_id = "reach.sublinear"
    elif alpha == 1:
        formula_id = "reach.linear"
    else:
        formula_id = "reach.superlinear"

    if V0 <= radius:
        return ReachEstimate(radius=radius, time=_bound(0.0, formula_id))

    warnings: Tuple[str, ...] = ()
    if alpha < 1:
        time = (V0 ** (1.0 - alpha) - ratio ** (1.0 - alpha)) / (K * (1.0 - alpha))
    elif alpha == 1:
        time = math.log(R * V0 / Delta) / K
    else:
        time = ((R / Delta) ** (alpha - 1.0) - V0 ** (1.0 - alpha)) / (K * (alpha - 1.0))
    if time < 0:
        warnings = (f"reach-time formula negative ({time:.3e}) for V0 close to the region",)
        logger.warning(warnings[0])
    return ReachEstimate(radius=radius, time=_bound(time, formula_id, warnings))


# ---------------------------------------------------------------------------
# Law-level helpers
# ---------------------------------------------------------------------------

def settling_time_quadrature(law: BaseLaw, e0: float) -> SettlingEstimate:
    """t_s(e0) = integral over (0, |e0|] of de / |r(e)|, by adaptive quadrature.

    ``e0`` may be infinite for fixed-time laws, giving the supremum of t_s.
    """
    upper = abs(e0)
    if upper == 0:
        return _exact(0.0, "quadrature")

    def integrand(s: float) -> float:
        return 1.0 / abs(law.rectify(s))

    scale = float(getattr(law, "estar", 1.0))
    # Split off the singular end near zero and any exponent knots
    points = {min(scale, upper / 2.0)}
    if isinstance(law, PiecewiseExpLaw):
        points.update(k for k in law.knots if k < upper)

    total = 0.0
    edges = [0.0, *sorted(points), upper]
    for lo, hi in zip(edges[:-1], edges[1:]):
        value, _ = quad(integrand, lo, hi, limit=400, epsabs=1e-13, epsrel=1e-11)
        total += value
    return _exact(total, "quadrature")


def estimate_for_law(law: BaseLaw, e0: float) -> SettlingEstimate | None:
    """Best available analytic estimate for a law: exact when a closed form exists, else a bound.

    ``e0 = inf`` asks for the uniform bound. Returns None when no printed
    estimate applies (piecewise exponents with rho = 0, or finite-time laws at
    e0 = inf).
    """
    if math.isinf(e0):
        return uniform_bound(law)

    if isinstance(law, SprlAltLaw):
        return sprl_alt_settling_time(law.rho, law.kappa, law.gamma, e0)
    if isinstance(law, SprlLaw):
        return sprl_settling_time(law.kappa, law.gamma, e0)
    if isinstance(law, DprlAltLaw):
        if _close(law.gamma1 + law.gamma2, 2.0):
            return dprl_alt_sum2_settling_time(law.rho, law.kappa1, law.kappa2, law.gamma1, e0)
        return dprl_alt_settling_bound(law.rho, law.kappa1, law.kappa2, law.gamma1, law.gamma2)
    if isinstance(law, DprlLaw):
        return dprl_settling_time(law.kappa1, law.kappa2, law.gamma1, law.gamma2, e0)
    if isinstance(law, TwoPhasePeLaw):
        return two_phase_pe_settling_time(
            law.rho, law.kappa, law.gamma1, law.gamma2, law.estar, e0
        )
    return uniform_bound(law)


def uniform_bound(law: BaseLaw) -> SettlingEstimate | None:
    """Printed fixed-time bound of a law, or None if the law is not fixed-time or has none."""
    if isinstance(law, DprlAltLaw):
        return dprl_alt_settling_bound(law.rho, law.kappa1, law.kappa2, law.gamma1, law.gamma2)
    if isinstance(law, DprlLaw):
        return dprl_settling_bound(law.kappa1, law.kappa2, law.gamma1, law.gamma2)
    if isinstance(law, TwoPhasePeLaw):
        return two_phase_pe_settling_time(
            law.rho, law.kappa, law.gamma1, law.gamma2, law.estar, math.inf
        ).model_copy(update={"kind": EstimateKind.UPPER_BOUND})
    if isinstance(law, (PiecewiseExpALaw, PiecewiseExpBLaw)):
        if law.rho == 0:
            return None
        variant = "A" if isinstance(law, PiecewiseExpALaw) else "B"
        return piecewise_pe_bound(
            law.rho, law.kappa, law.gamma1, law.gamma2, law.estar, law.delta, variant
        )
    if isinstance(law, FractionalExpLaw):
        return fractional_pe_bound(law.rho, law.kappa, law.alpha, law.beta, law.m, law.estar)
    return None


def settling_rows(law: BaseLaw, e0: float) -> List[SettlingEstimate]:
    """Every estimate that applies to (law, e0): the exact value first, then bounds."""
    rows: List[SettlingEstimate] = []
    if math.isfinite(e0):
        estimate = estimate_for_law(law, e0)
        if estimate is not None and estimate.kind is EstimateKind.EXACT:
            rows.append(estimate)
    if isinstance(law, DprlAltLaw) and _close(law.gamma1 + law.gamma2, 2.0):
        rows.append(dprl_alt_sum2_bound(law.rho, law.kappa1, law.kappa2, law.gamma1))
    bound = uniform_bound(law)
    if bound is not None:
        rows.append(bound)
    return rows


def tail_time(law: BaseLaw, tol: float) -> float:
    """Exact time for |e| to go from ``tol`` to zero.

    A sampled trace reaches |e| <= tol this much earlier than the exact settling
    instant, so comparisons against exact settling times subtract it.
    """
    estimate = estimate_for_law(law, tol)
    if estimate is not None and estimate.kind is EstimateKind.EXACT:
        return estimate.time
    return settling_time_quadrature(law, tol).time


def componentwise_initial_error(e0: float | np.ndarray) -> float:
    """max_i |e_i(0)|, the scalar a componentwise settling estimate is evaluated at."""
    return float(np.max(np.abs(np.atleast_1d(np.asarray(e0, dtype=float)))))
