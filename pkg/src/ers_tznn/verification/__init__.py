"""Acceptance-criteria verification suite."""

import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Iterable, List

from ers_tznn.config import settings
from ers_tznn.exceptions import ParameterError
from ers_tznn.session import VERIFY_FILE, atomic_write_json
from ers_tznn.verification.base import BaseCheck, CheckContext, CheckLevel, CheckResult
from ers_tznn.verification.checks import ALL_CHECKS
from ers_tznn.verification.registry import CheckRegistry, check_registry
from ers_tznn.verification.summary import VerificationSummary

logger = logging.getLogger(__name__)

for _check_class in ALL_CHECKS:
    check_registry.register(_check_class)


def _run_named(name: str, level: str) -> CheckResult:
    """Process-pool entry point; the child imports the registry afresh."""
    return check_registry.get(name).run(level)


def select_checks(only: Iterable[str] | None = None) -> List[BaseCheck]:
    """Checks named in ``only`` (names or criterion numbers), or all of them.

    Raises:
        ParameterError: If a name matches no registered check
    """
    if not only:
        return check_registry.all()
    selected = []
    for name in only:
        check = check_registry.get(str(name))
        if check is None:
            raise ParameterError("only", f"unknown check {name!r}")
        if check not in selected:
            selected.append(check)
    return sorted(selected, key=lambda c: c.criterion)


def run_verification(
    level: CheckLevel | str = CheckLevel.QUICK,
    jobs: int | None = None,
    only: Iterable[str] | None = None,
    out_dir: Path | None = None,
) -> VerificationSummary:
    """Run the acceptance checks.

    Args:
        level: quick or full grids
        jobs: Worker processes; 1 runs in-process (defaults to ``settings.verify_jobs``)
        only: Restrict to these checks (names or criterion numbers)
        out_dir: If given, ``verify.json`` is written there

    Returns:
        Summary with one result per check, in criterion order
    """
    level = CheckLevel(level)
    jobs = jobs or settings.verify_jobs
    checks = select_checks(only)
    started = time.perf_counter()
    logger.info("running %d checks at level %s with %d job(s)", len(checks), level.value, jobs)

    if jobs <= 1 or len(checks) <= 1:
        results = [check.run(level) for check in checks]
    else:
        results = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_run_named, c.name, level.value): c for c in checks}
            for future in as_completed(futures):
                results.append(future.result())
        results.sort(key=lambda r: r.criterion)

    summary = VerificationSummary(
        level=level.value, results=results, elapsed_s=time.perf_counter() - started
    )
    if out_dir is not None:
        atomic_write_json(Path(out_dir) / VERIFY_FILE, summary.to_dict())
    return summary


__all__ = [
    "BaseCheck",
    "CheckContext",
    "CheckLevel",
    "CheckRegistry",
    "CheckResult",
    "VerificationSummary",
    "check_registry",
    "run_verification",
    "select_checks",
]
