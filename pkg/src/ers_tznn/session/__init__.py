"""Run directories and atomic output files."""

import json
import logging
import os
import re
import tempfile
from datetime import datetime
from pathlib import Path
from typing import Any

from tenacity import (
    Retrying,
    before_sleep_log,
    retry_if_exception_type,
    stop_after_attempt,
    wait_exponential,
)

from ers_tznn.config import settings
from ers_tznn.exceptions import ParameterError

logger = logging.getLogger(__name__)

REPORT_FILE = "report.json"
TRACE_FILE = "trace.csv"
METADATA_FILE = "metadata.json"
VERIFY_FILE = "verify.json"


def _replace(source: Path, target: Path) -> None:
    """os.replace, retried while another process (or a virus scanner) holds the target."""
    for attempt in Retrying(
        stop=stop_after_attempt(max(1, settings.io_retry_attempts)),
        wait=wait_exponential(multiplier=0.05, max=1.0),
        retry=retry_if_exception_type(PermissionError),
        before_sleep=before_sleep_log(logger, logging.WARNING),
        reraise=True,
    ):
        with attempt:
            os.replace(source, target)


def atomic_write_text(path: Path, text: str) -> Path:
    """Write ``text`` to ``path`` through a temporary file in the same directory.

    Readers never observe a partially written file.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    tmp_path = Path(tmp_name)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        _replace(tmp_path, path)
    except BaseException:
        tmp_path.unlink(missing_ok=True)
        raise
    return path


def atomic_write_json(path: Path, data: Any) -> Path:
    """Serialize ``data`` as indented JSON and write it atomically."""
    return atomic_write_text(path, json.dumps(data, indent=2) + "\n")


def _slug(name: str) -> str:
    slug = re.sub(r"[^A-Za-z0-9_.-]+", "_", name).strip("._")
    return slug[:80] or "run"


class RunStore:
    """Manages one output directory per scenario under a base directory."""

    def __init__(self, base_dir: Path | None = None):
        """Initialize the store.

        Args:
            base_dir: Base directory for runs (defaults to ``settings.output_dir``)
        """
        self.base_dir = Path(base_dir) if base_dir is not None else Path(settings.output_dir)
        self.base_dir.mkdir(parents=True, exist_ok=True)

    def run_dir(self, name: str) -> Path:
        return self.base_dir / _slug(name)

    def create_run(self, name: str, kind: str = "scalar") -> Path:
        """Create (or reuse) the directory for a scenario and record its metadata.

        Args:
            name: Scenario name
            kind: Problem kind (scalar, benchmark, inline)

        Returns:
            Run directory path
        """
        run_dir = self.run_dir(name)
        run_dir.mkdir(parents=True, exist_ok=True)
        metadata = {
            "scenario": name,
            "kind": kind,
            "created_at": datetime.now().isoformat(),
        }
        atomic_write_json(run_dir / METADATA_FILE, metadata)
        return run_dir

    def list_runs(self, limit: int = 50) -> list[dict]:
        """List runs that have a report, newest first.

        Args:
            limit: Maximum number of runs to return

        Returns:
            List of report summaries with the run directory attached
        """
        runs = []
        candidates = [p for p in self.base_dir.iterdir() if p.is_dir()]
        for run_dir in sorted(candidates, key=lambda p: p.stat().st_mtime, reverse=True):
            report_path = run_dir / REPORT_FILE
            if not report_path.exists():
                continue
            try:
                report = json.loads(report_path.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                logger.warning("skipping unreadable report %s: %s", report_path, exc)
                continue
            report["run_dir"] = str(run_dir)
            runs.append(report)
            if len(runs) >= limit:
                break
        return runs

    def load_verification(self) -> dict | None:
        """The aggregate verification summary at the store root, if present.

        Raises:
            ParameterError: If the file is unreadable or not a verification summary
        """
        path = self.base_dir / VERIFY_FILE
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ParameterError(VERIFY_FILE, f"{path}: {exc}") from exc
        checks = data.get("checks", []) if isinstance(data, dict) else None
        if (
            not isinstance(checks, list)
            or not all(isinstance(check, dict) for check in checks)
            or not isinstance(data.get("summary", {}), dict)
        ):
            raise ParameterError(VERIFY_FILE, f"{path}: not a verification summary")
        return data
