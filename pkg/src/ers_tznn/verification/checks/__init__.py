"""Acceptance checks, one per criterion."""

from ers_tznn.verification.checks.exponential import (
    ExponentialBoundCheck,
    TwoPhaseExactCheck,
    TwoPhaseOrderingCheck,
)
from ers_tznn.verification.checks.power import (
    DprlAltBoundCheck,
    DprlAltSum2Check,
    DprlExactCheck,
    DprlFixedTimeCheck,
    SprlAltExactCheck,
    SprlExactCheck,
)
from ers_tznn.verification.checks.reach import LyapunovReachCheck
from ers_tznn.verification.checks.reproducibility import ReproducibilityCheck
from ers_tznn.verification.checks.robustness import SignumRejectionCheck, SmoothResidualCheck
from ers_tznn.verification.checks.specfun import IncompleteBetaCheck
from ers_tznn.verification.checks.tracking import QpTrackingCheck

ALL_CHECKS = (
    IncompleteBetaCheck,
    SprlExactCheck,
    SprlAltExactCheck,
    DprlExactCheck,
    DprlFixedTimeCheck,
    DprlAltBoundCheck,
    DprlAltSum2Check,
    TwoPhaseExactCheck,
    TwoPhaseOrderingCheck,
    ExponentialBoundCheck,
    SmoothResidualCheck,
    SignumRejectionCheck,
    QpTrackingCheck,
    LyapunovReachCheck,
    ReproducibilityCheck,
)

__all__ = [
    "ALL_CHECKS",
    "DprlAltBoundCheck",
    "DprlAltSum2Check",
    "DprlExactCheck",
    "DprlFixedTimeCheck",
    "ExponentialBoundCheck",
    "IncompleteBetaCheck",
    "LyapunovReachCheck",
    "QpTrackingCheck",
    "ReproducibilityCheck",
    "SignumRejectionCheck",
    "SmoothResidualCheck",
    "SprlAltExactCheck",
    "SprlExactCheck",
    "TwoPhaseExactCheck",
    "TwoPhaseOrderingCheck",
]
