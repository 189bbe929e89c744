"""CLI interface for settling-time estimates, simulations and verification."""

import logging
import math
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Sequence, Tuple

import click
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from ers_tznn import __version__
from ers_tznn.config import settings
from ers_tznn.exceptions import (
    ConvergenceError,
    DomainError,
    IllConditionedError,
    NumericDivergenceError,
    ParameterError,
    StructuralError,
    UnsupportedOperationError,
)
from ers_tznn.laws import parse_law
from ers_tznn.scenario import (
    Scenario,
    SettlingReport,
    load_scenarios,
    parse_scenario,
    run_scenario,
    save_run,
)
from ers_tznn.session import RunStore, atomic_write_json
from ers_tznn.settle import settling_rows
from ers_tznn.verification import run_verification
from ers_tznn.verification.summary import VerificationSummary

console = Console()
err_console = Console(stderr=True)

logger = logging.getLogger("ers_tznn")

EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

DEFAULT_QP_LAW = {"type": "DPRL", "kappa1": 1.0, "kappa2": 1.0, "gamma1": 0.5, "gamma2": 1.5}


def _setup_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, rich_tracebacks=True, show_path=verbose)],
        force=True,
    )


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Map library errors to exit codes with a diagnostic on standard error."""
    try:
        yield
    except (ParameterError, StructuralError, DomainError, UnsupportedOperationError) as e:
        err_console.print(f"[red]Configuration error: {e}[/red]")
        sys.exit(EXIT_CONFIG)
    except ValidationError as e:
        err_console.print(f"[red]Configuration error: {e}[/red]")
        sys.exit(EXIT_CONFIG)
    except (NumericDivergenceError, IllConditionedError, ConvergenceError) as e:
        err_console.print(f"[red]Numeric failure: {e}[/red]")
        sys.exit(EXIT_NUMERIC)


def _parse_value(text: str):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            continue
    return text


def _parse_params(params: Sequence[str]) -> dict:
    """``("kappa=1", "gamma=0.5")`` -> ``{"kappa": 1, "gamma": 0.5}``."""
    parsed = {}
    for item in params:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ParameterError("param", f"expected key=value, got {item!r}")
        parsed[key.strip()] = _parse_value(value.strip())
    return parsed


def _law_spec(law_type: str | None, params: Sequence[str], default: dict | None = None) -> dict:
    if law_type is None:
        if default is None:
            raise ParameterError("law", "give --law TYPE (with --param k=v) or --config FILE")
        return dict(default, **_parse_params(params))
    return {"type": law_type, **_parse_params(params)}


def _fmt(value: float | None, digits: int = 6) -> str:
    if value is None:
        return "-"
    return f"{value:.{digits}g}"


def _scenarios(
    config: Path | None,
    law_type: str | None,
    params: Sequence[str],
    e0: Sequence[float],
    qp: bool,
    overrides: dict,
) -> List[Scenario]:
    """Scenarios from a file, or a single one assembled from flags."""
    if config is not None:
        scenarios = load_scenarios(config)
        if qp:
            scenarios = [s for s in scenarios if s.is_qp]
            if not scenarios:
                raise ParameterError("config", f"{config} contains no QP scenarios")
    elif qp:
        law = _law_spec(law_type, params, DEFAULT_QP_LAW)
        data = {"name": f"benchmark-{law['type']}", "problem": {"type": "benchmark"}, "law": law}
        scenarios = [parse_scenario(data)]
    else:
        law = _law_spec(law_type, params)
        if not e0:
            raise ParameterError("e0", "give at least one --e0 or a --config file")
        data = {
            "name": f"scalar-{law['type']}",
            "problem": {"type": "scalar", "e0": list(e0)},
            "law": law,
        }
        scenarios = [parse_scenario(data)]
    return [s.with_overrides(**overrides) for s in scenarios]


def _report_table(reports: Sequence[SettlingReport | dict], title: str) -> Table:
    table = Table(title=title, show_header=True)
    table.add_column("Scenario", style="cyan", no_wrap=True)
    table.add_column("Problem", style="blue")
    table.add_column("Formula", style="magenta")
    table.add_column("Analytic", justify="right")
    table.add_column("Empirical", justify="right")
    table.add_column("Residual", justify="right")
    table.add_column("Predicted", justify="right")
    table.add_column("Result")
    for report in reports:
        data = report.to_json() if isinstance(report, SettlingReport) else report
        analytic = data.get("analytic") or {}
        table.add_row(
            data.get("scenario", "?"),
            data.get("problem", "?"),
            analytic.get("formula_id", "-"),
            _fmt(analytic.get("time")),
            _fmt(data.get("empirical")),
            _fmt(data.get("residual_measured"), 3),
            _fmt(data.get("residual_predicted"), 3),
            "[green]PASS[/green]" if data.get("pass") else "[red]FAIL[/red]",
        )
    return table


def _run_and_save(scenarios: Sequence[Scenario], out: Path | None, title: str) -> None:
    store = RunStore(out)
    reports = []
    for scenario in scenarios:
        logger.info("running %s", scenario.name)
        trace, report = run_scenario(scenario)
        run_dir = save_run(store, scenario, trace, report)
        logger.debug("wrote %s", run_dir)
        reports.append(report)
        for note in report.notes:
            console.print(f"[dim]{scenario.name}: {note}[/dim]")

    console.print(_report_table(reports, title))
    console.print(f"\n[dim]Output directory: {store.base_dir}[/dim]")
    failed = [r.scenario for r in reports if not r.passed]
    if failed:
        err_console.print(f"[red]Failed: {', '.join(failed)}[/red]")
        sys.exit(EXIT_FAILURE)


_common_run_options = [
    click.option("--config", "-c", type=click.Path(exists=True, path_type=Path),
                 help="Scenario file (YAML)"),
    click.option("--out", "-o", type=click.Path(path_type=Path),
                 help="Output directory (default: ERS_OUTPUT_DIR or ./runs)"),
    click.option("--law", "law_type", help="Law type tag when no config is given, e.g. DPRL"),
    click.option("--param", "-p", "params", multiple=True, help="Law parameter as key=value"),
    click.option("--dt", type=float, help="Step size override"),
    click.option("--horizon", type=float, help="Simulated time override"),
    click.option("--tol", type=float, help="Settling threshold override"),
    click.option("--seed", type=int, help="Seed override for BoundedNoise disturbances"),
]


def _run_options(func):
    for option in reversed(_common_run_options):
        func = option(func)
    return func


@click.group()
@click.version_option(__version__, prog_name="ers")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging on standard error")
def cli(verbose: bool) -> None:
    """Error-dynamics settling times, TZNN simulations and their verification."""
    _setup_logging(verbose)


@cli.command()
@click.option("--law", "law_type", help="Law type tag, e.g. SPRL, DPRL, TwoPhasePE")
@click.option("--param", "-p", "params", multiple=True, help="Law parameter as key=value")
@click.option("--e0", "e0s", multiple=True, type=float,
              help="Initial error; repeat for several, 'inf' for the uniform bound")
@click.option("--config", "-c", type=click.Path(exists=True, path_type=Path),
              help="Take laws and initial errors from a scenario file")
@click.option("--out", "-o", type=click.Path(path_type=Path),
              help="Also write rows to this JSON file")
def settle(
    law_type: str | None,
    params: Tuple[str, ...],
    e0s: Tuple[float, ...],
    config: Path | None,
    out: Path | None,
) -> None:
    """Print exact settling times and uniform bounds.

    Example:
        ers settle --law SPRL -p kappa=1 -p gamma=0.5 --e0 4
        ers settle --law DPRL -p kappa1=1 -p kappa2=1 -p gamma1=0.5 -p gamma2=1.5 --e0 inf
    """
    with _exit_codes():
        cases = []
        if config is not None:
            for scenario in load_scenarios(config):
                if scenario.is_qp:
                    continue
                values = scenario.problem.e0
                values = values if isinstance(values, list) else [values]
                cases.extend((scenario.law, abs(v)) for v in values)
        else:
            law = parse_law(_law_spec(law_type, params))
            cases = [(law, abs(v)) for v in (e0s or (1.0, math.inf))]

        table = Table(title="Settling-time estimates", show_header=True)
        table.add_column("Law", style="cyan")
        table.add_column("e0", justify="right")
        table.add_column("Kind", style="blue")
        table.add_column("Time", justify="right", style="green")
        table.add_column("Formula", style="magenta")
        table.add_column("Warnings", style="yellow")
        rows = []
        for law, e0 in cases:
            estimates = settling_rows(law, e0)
            if not estimates:
                table.add_row(law.type, _fmt(e0), "-", "-", "-", "no estimate for this e0")
            for estimate in estimates:
                table.add_row(
                    law.type,
                    _fmt(e0),
                    estimate.kind.value,
                    _fmt(estimate.time, 10),
                    estimate.formula_id,
                    "; ".join(estimate.warnings),
                )
                rows.append(
                    {"law": law.model_dump(), "e0": e0, **estimate.model_dump(mode="json")}
                )
        console.print(table)
        if out is not None:
            atomic_write_json(out, rows)
            console.print(f"[green]✓[/green] Rows saved to: {out}")


@cli.command()
@_run_options
@click.option("--e0", "e0s", multiple=True, type=float, help="Initial error(s) for a scalar run")
def simulate(
    config: Path | None,
    out: Path | None,
    law_type: str | None,
    params: Tuple[str, ...],
    dt: float | None,
    horizon: float | None,
    tol: float | None,
    seed: int | None,
    e0s: Tuple[float, ...],
) -> None:
    """Simulate scenarios and write trace.csv and report.json per scenario.

    Example:
        ers simulate --config scenarios.yaml --out runs
        ers simulate --law SPRL -p kappa=1 -p gamma=0.5 --e0 4 --dt 1e-4
    """
    overrides = {"dt": dt, "horizon": horizon, "settle_tol": tol, "seed": seed}
    with _exit_codes():
        scenarios = _scenarios(config, law_type, params, e0s, qp=False, overrides=overrides)
        _run_and_save(scenarios, out, "Simulation reports")


@cli.command()
@_run_options
def qp(
    config: Path | None,
    out: Path | None,
    law_type: str | None,
    params: Tuple[str, ...],
    dt: float | None,
    horizon: float | None,
    tol: float | None,
    seed: int | None,
) -> None:
    """Run the TZNN model on time-variant QP scenarios (the benchmark by default).

    Example:
        ers qp --horizon 20 --dt 1e-3
        ers qp --config scenarios.yaml
    """
    overrides = {"dt": dt, "horizon": horizon, "settle_tol": tol, "seed": seed}
    with _exit_codes():
        scenarios = _scenarios(config, law_type, params, (), qp=True, overrides=overrides)
        _run_and_save(scenarios, out, "TZNN reports")


@cli.command()
@click.option("--level", type=click.Choice(["quick", "full"]), default="quick", show_default=True,
              help="Grid size")
@click.option("--jobs", "-j", type=int, default=None,
              help="Worker processes (default: ERS_VERIFY_JOBS)")
@click.option("--only", multiple=True, help="Run only this check (name or criterion number)")
@click.option("--out", "-o", type=click.Path(path_type=Path), help="Directory for verify.json")
def verify(level: str, jobs: int | None, only: Tuple[str, ...], out: Path | None) -> None:
    """Run the acceptance checks.

    Example:
        ers verify --level quick
        ers verify --level full --jobs 4 --out runs
    """
    with _exit_codes():
        out_dir = out if out is not None else Path(settings.output_dir)
        summary = run_verification(level, jobs=jobs, only=only, out_dir=out_dir)
        summary.print_summary(console)
        console.print(f"\n[dim]Summary written to {out_dir / 'verify.json'}[/dim]")
        if not summary.passed:
            sys.exit(EXIT_FAILURE)


@cli.command()
@click.option("--out", "-o", type=click.Path(exists=True, path_type=Path),
              help="Output directory to read (default: ERS_OUTPUT_DIR or ./runs)")
@click.option("--limit", "-l", type=int, default=50, show_default=True,
              help="Maximum number of runs to list")
def report(out: Path | None, limit: int) -> None:
    """Render saved run reports and the last verification summary.

    Example:
        ers report --out runs
    """
    with _exit_codes():
        store = RunStore(out)
        runs = store.list_runs(limit=limit)
        verification = store.load_verification()
        if not runs and verification is None:
            console.print("[yellow]No reports found[/yellow]")
            return
        if runs:
            console.print(_report_table(runs, f"Runs (showing {len(runs)} of {limit} max)"))
        if verification is not None:
            summary = VerificationSummary.from_dict(verification)
            summary.print_summary(console)
    console.print(f"\n[dim]Base directory: {store.base_dir}[/dim]")


def main() -> None:
    """Entry point for the CLI."""
    cli()


if __name__ == "__main__":
    main()
