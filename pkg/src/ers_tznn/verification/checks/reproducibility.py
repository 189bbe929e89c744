"""Scenario round trip and run determinism."""

import tempfile
from pathlib import Path

from ers_tznn.compensate import GainSplit, SmoothCompensation
from ers_tznn.dynamics import BoundedNoise, SinusoidDisturbance
from ers_tznn.laws import DprlAltLaw, SprlLaw
from ers_tznn.qp import InlineQpSpec
from ers_tznn.scenario import (
    BenchmarkProblem,
    Numerics,
    ScalarProblem,
    Scenario,
    dump_scenarios,
    load_scenarios,
    run_scenario,
)
from ers_tznn.settle import FORMULA_IDS
from ers_tznn.verification.base import BaseCheck, CheckContext


def sample_scenarios() -> list[Scenario]:
    dprl_alt = DprlAltLaw(rho=1.0, kappa1=1.0, kappa2=1.0, gamma1=0.5, gamma2=1.5)
    short = Numerics(dt=1e-3, horizon=1.0, settle_tol=1e-6, deadzone=1e-12)
    return [
        Scenario(
            name="scalar-noise",
            problem=ScalarProblem(e0=[4.0, -0.5]),
            law=SprlLaw(kappa=1.0, gamma=0.5),
            comp=SmoothCompensation(varpi=1.0, epsilon=1e-2),
            dist=BoundedNoise(bound=0.5, seed=7),
            numerics=short,
        ),
        Scenario(
            name="benchmark-sinusoid",
            problem=BenchmarkProblem(),
            law=dprl_alt,
            comp=SmoothCompensation(varpi=1.0, epsilon=1e-3),
            dist=SinusoidDisturbance(amplitude=0.9, angular_frequency=2.0),
            numerics=short,
            split=GainSplit(rho2=0.5, kappa1_2=0.25, kappa2_2=0.25),
        ),
        Scenario(
            name="inline-noise",
            problem=InlineQpSpec(
                G=[["2 + sin(t)", "0"], ["0", "2 + cos(t)"]],
                A=[["1", "sin(t)"]],
                c=["cos(t)", "-sin(t)"],
                b=["cos(t)"],
            ),
            law=dprl_alt,
            comp=SmoothCompensation(varpi=1.0, epsilon=1e-2),
            dist=BoundedNoise(bound=0.9, seed=3),
            numerics=short,
            z0=[0.0, 0.0, 0.0],
        ),
    ]


class ReproducibilityCheck(BaseCheck):
    name = "reproducibility"
    description = "Scenario files round-trip and identical scenarios give identical traces"
    criterion = 15

    def evaluate(self, ctx: CheckContext) -> None:
        scenarios = sample_scenarios()
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "scenarios.yaml"
            dump_scenarios(scenarios, path)
            loaded = load_scenarios(path)
        ctx.expect(
            loaded == scenarios,
            "scenarios changed across a YAML round trip",
            round_trip=[s.name for s in loaded],
        )

        for scenario in scenarios:
            first, report = run_scenario(scenario)
            second, _ = run_scenario(scenario)
            ctx.reports.append(report.to_json())
            ctx.expect(
                first.to_csv_text() == second.to_csv_text(),
                f"{scenario.name}: repeated runs produced different CSV output",
                scenario=scenario.name,
            )
            formula_id = report.analytic.formula_id if report.analytic else None
            ctx.expect(
                formula_id is None or formula_id in FORMULA_IDS,
                f"{scenario.name}: unknown formula id {formula_id!r}",
                formula_id=formula_id,
            )
