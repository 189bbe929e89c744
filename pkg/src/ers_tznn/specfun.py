"""Special functions used by the settling-time formulas.

log-Gamma comes from scipy; the regularized incomplete Beta function is
evaluated by its continued fraction (modified Lentz) with the tail switch
I(x, p, q) = 1 - I(1 - x, q, p).
"""

import math

from scipy.special import gammaln

from ers_tznn.config import settings
from ers_tznn.exceptions import ConvergenceError, DomainError

# Smallest magnitude allowed in the Lentz recurrences
_FPMIN = 1e-300


def _require_positive(name: str, value: float) -> None:
    if not value > 0 or not math.isfinite(value):
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")


def ln_gamma(x: float) -> float:
    """Natural logarithm of the Gamma function.

    Args:
        x: Positive argument

    Returns:
        ln Gamma(x)

    Raises:
        DomainError: If x <= 0
    """
    _require_positive("x", x)
    return float(gammaln(x))


def ln_beta(p: float, q: float) -> float:
    """Natural logarithm of the Beta function B(p, q)."""
    _require_positive("p", p)
    _require_positive("q", q)
    return ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q)


def beta(p: float, q: float) -> float:
    """Beta function B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q).

    Raises:
        DomainError: If either shape is not positive
    """
    return math.exp(ln_beta(p, q))


def _beta_continued_fraction(x: float, p: float, q: float) -> float:
    """Continued fraction for I(x, p, q), valid for x < (p + 1) / (p + q + 2)."""
    max_iterations = settings.cf_max_iterations
    eps = settings.cf_epsilon

    qab = p + q
    qap = p + 1.0
    qam = p - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d

    for m in range(1, max_iterations + 1):
        m2 = 2 * m
        # Even step
        aa = m * (q - m) * x / ((qam + m2) * (p + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        # Odd step
        aa = -(p + m) * (qab + m) * x / ((p + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h

    raise ConvergenceError(
        f"incomplete Beta continued fraction did not converge in {max_iterations} iterations "
        f"(x={x!r}, p={p!r}, q={q!r})"
    )


def reg_inc_beta(x: float, p: float, q: float) -> float:
    """Regularized incomplete Beta function I(x, p, q).

    Args:
        x: Upper integration limit in [0, 1]
        p: First shape, positive
        q: Second shape, positive

    Returns:
        I(x, p, q) in [0, 1]

    Raises:
        DomainError: If an argument is outside its domain
        ConvergenceError: If the continued fraction does not converge
    """
    _require_positive("p", p)
    _require_positive("q", q)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x!r}")

    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0

    log_front = -ln_beta(p, q) + p * math.log(x) + q * math.log1p(-x)
    front = math.exp(log_front)

    if x < (p + 1.0) / (p + q + 2.0):
        value = front * _beta_continued_fraction(x, p, q) / p
    else:
        value = 1.0 - front * _beta_continued_fraction(1.0 - x, q, p) / q

    return min(1.0, max(0.0, value))
