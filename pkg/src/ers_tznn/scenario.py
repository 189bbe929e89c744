"""Scenario files and the shared run driver.

A scenario names a problem (scalar error system, the benchmark QP or an inline
QP), the attracting law, compensation, disturbance and numerics. Files are
YAML with tagged unions spelled out::

    scenarios:
      - name: sprl-e0-4
        problem: {type: scalar, e0: 4.0}
        law: {type: SPRL, kappa: 1.0, gamma: 0.5}
        numerics: {dt: 1.0e-4, horizon: 10.0}
"""

import logging
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
import yaml
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    computed_field,
    model_validator,
)

from ers_tznn.compensate import (
    Compensation,
    GainSplit,
    NoCompensation,
    SignumCompensation,
    SmoothCompensation,
    certified_radius,
    complement_law,
    residual_radius,
)
from ers_tznn.config import get_settings
from ers_tznn.dynamics import (
    Disturbance,
    ErsConfig,
    Trace,
    ZeroDisturbance,
    empirical_residual,
    empirical_settling_time,
    integrate_scalar,
)
from ers_tznn.exceptions import ParameterError, UnsupportedOperationError
from ers_tznn.laws import AttractingLaw, parameter_error_from
from ers_tznn.qp import InlineQpSpec, QpTrace, TimeVariantQP, integrate_tznn, make_benchmark_qp
from ers_tznn.session import REPORT_FILE, TRACE_FILE, RunStore, atomic_write_json, atomic_write_text
from ers_tznn.settle import (
    EstimateKind,
    SettlingEstimate,
    componentwise_initial_error,
    estimate_for_law,
    settling_time_quadrature,
    tail_time,
)

logger = logging.getLogger(__name__)

# Tags that discriminated unions insert into validation error locations
_UNION_TAGS = (
    "scalar", "benchmark", "inline", "None", "Signum", "Smooth",
    "Zero", "Constant", "Sinusoid", "BoundedNoise",
)

# Fraction of sign changes in the trailing window that counts as chattering
_CHATTER_FRACTION = 0.1

# Points at which QP structure is checked before a run
_STRUCTURE_SAMPLES = 50


class ScalarProblem(BaseModel):
    """Independent scalar error systems, one per initial error."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    type: Literal["scalar"] = "scalar"
    e0: Union[float, List[float]]


class BenchmarkProblem(BaseModel):
    """The built-in benchmark QP."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    type: Literal["benchmark"] = "benchmark"


Problem = Annotated[
    Union[ScalarProblem, BenchmarkProblem, InlineQpSpec],
    Field(discriminator="type"),
]


class Numerics(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    dt: float = Field(default_factory=lambda: get_settings().default_dt, gt=0)
    horizon: float = Field(default_factory=lambda: get_settings().default_horizon, gt=0)
    settle_tol: float = Field(default_factory=lambda: get_settings().settle_tol, gt=0)
    deadzone: float = Field(default_factory=lambda: get_settings().deadzone, gt=0)

    @model_validator(mode="after")
    def _check(self) -> "Numerics":
        if self.dt > self.horizon:
            raise ValueError(f"dt={self.dt} exceeds horizon={self.horizon}")
        if not self.settle_tol > self.deadzone:
            raise ValueError(f"settle_tol={self.settle_tol} must exceed deadzone={self.deadzone}")
        return self


class Scenario(BaseModel):
    """One named run: problem, law, compensation, disturbance and numerics."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    name: str = Field(min_length=1)
    problem: Problem
    law: AttractingLaw
    comp: Compensation = Field(default_factory=NoCompensation)
    dist: Disturbance = Field(default_factory=ZeroDisturbance)
    numerics: Numerics = Field(default_factory=Numerics)
    split: Optional[GainSplit] = None
    z0: Optional[List[float]] = None
    derivative_mode: Optional[Literal["analytic", "finite_difference"]] = None

    @model_validator(mode="after")
    def _check_split(self) -> "Scenario":
        if self.split is not None:
            self.split.check_against(self.law)
        if self.z0 is not None and self.problem.type == "scalar":
            raise ValueError("z0 applies to QP problems; scalar problems take problem.e0")
        return self

    @property
    def kind(self) -> str:
        return self.problem.type

    @property
    def is_qp(self) -> bool:
        return self.kind != "scalar"

    def ers_config(self) -> ErsConfig:
        return ErsConfig(law=self.law, comp=self.comp, dist=self.dist, **self.numerics.model_dump())

    def build_problem(self) -> TimeVariantQP:
        """Time-variant QP of a benchmark or inline scenario."""
        if isinstance(self.problem, InlineQpSpec):
            return self.problem.to_problem(self.name)
        if isinstance(self.problem, BenchmarkProblem):
            return make_benchmark_qp()
        raise UnsupportedOperationError(f"scenario {self.name!r} is a scalar error system")

    def with_overrides(
        self,
        dt: float | None = None,
        horizon: float | None = None,
        settle_tol: float | None = None,
        seed: int | None = None,
    ) -> "Scenario":
        """Copy with command-line overrides applied and re-validated.

        ``seed`` only affects BoundedNoise disturbances.
        """
        data = self.model_dump()
        numerics = data["numerics"]
        for key, value in (("dt", dt), ("horizon", horizon), ("settle_tol", settle_tol)):
            if value is not None:
                numerics[key] = value
        if seed is not None and data["dist"]["type"] == "BoundedNoise":
            data["dist"]["seed"] = seed
        return parse_scenario(data)


def parse_scenario(data: Dict[str, Any], index: int | None = None) -> Scenario:
    """Validate one scenario mapping.

    Raises:
        ParameterError: Naming the first invalid field
    """
    try:
        return Scenario.model_validate(data)
    except ValidationError as exc:
        prefix = f"scenarios[{index}]" if index is not None else ""
        raise parameter_error_from(exc, prefix, _UNION_TAGS) from exc


def load_scenarios(path: Path) -> List[Scenario]:
    """Read scenarios from a YAML file.

    The file holds a ``scenarios`` list, a bare list, or a single scenario.

    Raises:
        ParameterError: On YAML syntax errors, invalid fields or duplicate names
    """
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ParameterError("config", f"{path}: {exc}") from exc
    except OSError as exc:
        raise ParameterError("config", f"cannot read {path}: {exc}") from exc

    if isinstance(raw, dict) and "scenarios" in raw:
        items = raw["scenarios"]
    elif isinstance(raw, list):
        items = raw
    elif isinstance(raw, dict):
        items = [raw]
    else:
        raise ParameterError("config", f"{path}: expected a mapping or a list of scenarios")
    if not isinstance(items, list):
        raise ParameterError("scenarios", "must be a list")

    scenarios = [parse_scenario(item, i) for i, item in enumerate(items)]
    seen = set()
    for i, scenario in enumerate(scenarios):
        if scenario.name in seen:
            raise ParameterError(
                f"scenarios[{i}].name", f"duplicate scenario name {scenario.name!r}"
            )
        seen.add(scenario.name)
    logger.debug("loaded %d scenarios from %s", len(scenarios), path)
    return scenarios


def dump_scenarios(scenarios: Sequence[Scenario], path: Path | None = None) -> str:
    """Serialize scenarios to YAML text, optionally writing it to ``path``."""
    text = yaml.safe_dump(
        {"scenarios": [s.model_dump(mode="json", exclude_none=True) for s in scenarios]},
        sort_keys=False,
    )
    if path is not None:
        atomic_write_text(Path(path), text)
    return text


class Margins(BaseModel):
    """Positive margins mean the measurement is inside its prediction."""

    model_config = ConfigDict(frozen=True)

    settling: Optional[float] = None
    residual: Optional[float] = None


class SettlingReport(BaseModel):
    """Analytic predictions next to what a run measured."""

    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="ignore")

    scenario: str
    problem: str
    law: Dict[str, Any]
    comp: Dict[str, Any]
    disturbance: Dict[str, Any]
    settle_tol: float
    analytic: Optional[SettlingEstimate] = None
    tolerance: float = 0.0
    empirical: Optional[float] = None
    residual_predicted: Optional[float] = None
    residual_printed: Optional[float] = None
    residual_measured: float = 0.0
    residual_after: Optional[float] = None
    chattering: bool = False
    derivative_mode: Optional[str] = None
    margins: Margins = Field(default_factory=Margins)
    notes: List[str] = Field(default_factory=list)
    passed: bool = Field(alias="pass")

    @computed_field  # type: ignore[prop-decorator]
    @property
    def empirical_settling_time(self) -> Optional[float]:
        return self.empirical

    @computed_field  # type: ignore[prop-decorator]
    @property
    def analytic_bound(self) -> Optional[float]:
        return self.analytic.time if self.analytic is not None else None

    @computed_field  # type: ignore[prop-decorator]
    @property
    def residual_sup(self) -> float:
        return self.residual_measured

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True)


def _analytic_estimate(law, e0: float) -> Tuple[Optional[SettlingEstimate], List[str]]:
    notes: List[str] = []
    try:
        estimate = estimate_for_law(law, e0)
    except UnsupportedOperationError as exc:
        estimate, notes = None, [str(exc)]
    if estimate is None:
        estimate = settling_time_quadrature(law, e0)
        notes.append("no closed-form estimate; using the quadrature of the settling integral")
    return estimate, notes


def _chattering(trace: Any, after: float, deadzone: float) -> bool:
    """Whether some component flips sign on a sizable share of the trailing samples."""
    mask = trace.times >= after
    errors = trace.errors if isinstance(trace, Trace) else trace.e
    window = errors[mask]
    if window.shape[0] < 3:
        return False
    signs = np.where(np.abs(window) > deadzone, np.sign(window), 0.0)
    flips = np.sum(signs[1:] * signs[:-1] < 0, axis=0)
    return bool(np.max(flips) > _CHATTER_FRACTION * (window.shape[0] - 1))


def _residual_window(scenario: Scenario, split: GainSplit, e0: float, horizon: float) -> float:
    """Start of the residual measurement: settling estimate of the gains left after the split."""
    fallback = horizon / 2.0
    try:
        estimate = estimate_for_law(complement_law(scenario.law, split), e0)
    except (UnsupportedOperationError, ParameterError):
        return fallback
    if estimate is None or not estimate.time < horizon:
        return fallback
    return estimate.time


def evaluate_run(
    scenario: Scenario, trace: Any, e0: float, derivative_mode: str | None = None
) -> SettlingReport:
    """Compare a finished run against its analytic predictions.

    The settling check applies without disturbance, or with signum compensation
    that dominates the disturbance. The residual check applies to smooth
    compensation under disturbance, against the certified radius. Runs that fit
    neither pass with a note.
    """
    law, comp, dist, numerics = scenario.law, scenario.comp, scenario.dist, scenario.numerics
    horizon = float(trace.times[-1])
    notes: List[str] = []
    settling_margin: Optional[float] = None
    residual_margin: Optional[float] = None
    passed = True

    signum_dominates = isinstance(comp, SignumCompensation) and comp.varpi >= dist.magnitude
    settle_applies = dist.is_zero or signum_dominates
    settle_tol = numerics.settle_tol
    if isinstance(comp, SignumCompensation):
        settle_tol = max(settle_tol, 2.0 * comp.varpi * numerics.dt)

    analytic, estimate_notes = _analytic_estimate(law, e0)
    notes.extend(estimate_notes)
    tolerance = max(0.01 * analytic.time, 10.0 * numerics.dt)
    empirical = empirical_settling_time(trace, settle_tol)

    if settle_applies:
        if empirical is None:
            passed = False
            notes.append(f"error still above {settle_tol:.3g} at the horizon")
        else:
            settling_margin = analytic.time + tolerance - empirical
            passed = passed and settling_margin >= 0
            if analytic.kind is EstimateKind.EXACT and comp.bound == 0:
                lower = analytic.time - tail_time(law, settle_tol) - tolerance
                if empirical < lower:
                    notes.append(
                        f"settled faster than the exact time ({empirical:.6g} < {lower:.6g})"
                    )

    residual_predicted = residual_printed = None
    residual_after = horizon / 2.0
    if isinstance(comp, SmoothCompensation) and not dist.is_zero:
        split = scenario.split or GainSplit.half_of(law)
        residual_after = _residual_window(scenario, split, e0, horizon)
        try:
            residual_predicted = certified_radius(law, comp, split)
        except UnsupportedOperationError as exc:
            notes.append(str(exc))
        try:
            residual_printed = residual_radius(law, comp.epsilon, split)
        except (UnsupportedOperationError, ParameterError) as exc:
            notes.append(f"printed radius unavailable: {exc}")
    elif empirical is not None and empirical < horizon:
        residual_after = empirical

    residual_measured = empirical_residual(trace, residual_after)
    if residual_predicted is not None:
        residual_margin = residual_predicted - residual_measured
        passed = passed and residual_margin >= 0

    if not settle_applies and residual_predicted is None:
        notes.append("no analytic criterion applies to this disturbance/compensation pair")

    chattering = _chattering(trace, residual_after, numerics.deadzone)
    if chattering:
        notes.append(f"chattering after t={residual_after:.6g} (sup |e| = {residual_measured:.3e})")

    return SettlingReport(
        scenario=scenario.name,
        problem=scenario.kind,
        law=law.model_dump(),
        comp=comp.model_dump(),
        disturbance=dist.model_dump(),
        settle_tol=settle_tol,
        analytic=analytic,
        tolerance=tolerance,
        empirical=empirical,
        residual_predicted=residual_predicted,
        residual_printed=residual_printed,
        residual_measured=residual_measured,
        residual_after=residual_after,
        chattering=chattering,
        derivative_mode=derivative_mode,
        margins=Margins(settling=settling_margin, residual=residual_margin),
        notes=notes,
        passed=passed,
    )


def run_scenario(scenario: Scenario) -> Tuple[Union[Trace, QpTrace], SettlingReport]:
    """Simulate a scenario and evaluate it.

    Raises:
        NumericDivergenceError: If the state becomes non-finite
        IllConditionedError: If a KKT matrix is too close to singular
        StructuralError: If QP data violate their structural invariants
    """
    numerics = scenario.numerics
    if not scenario.is_qp:
        trace = integrate_scalar(scenario.ers_config(), scenario.problem.e0)
        e0 = componentwise_initial_error(scenario.problem.e0)
        return trace, evaluate_run(scenario, trace, e0)

    qp = scenario.build_problem()
    qp.check(np.linspace(0.0, numerics.horizon, _STRUCTURE_SAMPLES))
    qp_trace = integrate_tznn(
        qp,
        scenario.law,
        scenario.comp,
        scenario.dist,
        scenario.z0,
        numerics.dt,
        numerics.horizon,
        scenario.derivative_mode,
    )
    e0 = componentwise_initial_error(qp_trace.e[0])
    mode = qp_trace.info["derivative_mode"]
    report = evaluate_run(scenario, qp_trace, e0, mode)
    if mode == "finite_difference":
        report = report.model_copy(
            update={"notes": [*report.notes, "M' and u' approximated by central differences"]}
        )
    return qp_trace, report


def save_run(
    store: RunStore, scenario: Scenario, trace: Union[Trace, QpTrace], report: SettlingReport
) -> Path:
    """Write ``trace.csv`` and ``report.json`` into the scenario's run directory."""
    run_dir = store.create_run(scenario.name, scenario.kind)
    trace.to_csv(run_dir / TRACE_FILE)
    atomic_write_json(run_dir / REPORT_FILE, report.to_json())
    return run_dir
