"""Base classes for acceptance checks."""

import logging
import time
import traceback
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List

from ers_tznn.config import settings

logger = logging.getLogger(__name__)


class CheckLevel(str, Enum):
    """Grid size of a verification run."""
    QUICK = "quick"  # coarse grids and steps
    FULL = "full"  # complete grids at the default step


@dataclass
class CheckResult:
    """Outcome of one acceptance check."""

    # Check identity
    name: str
    criterion: int
    description: str

    # Whether every cell of the check passed
    success: bool

    # Human-readable failures and notable observations
    findings: List[str] = field(default_factory=list)

    # Measured quantities per cell
    structured_data: Dict[str, Any] = field(default_factory=dict)

    # One serialized SettlingReport per simulated matrix cell
    reports: List[Dict[str, Any]] = field(default_factory=list)

    # Level, timing, cell counts
    metadata: Dict[str, Any] = field(default_factory=dict)

    # Exception text if the check crashed
    error: str | None = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for storage."""
        return {
            "name": self.name,
            "criterion": self.criterion,
            "description": self.description,
            "success": self.success,
            "findings": self.findings,
            "structured_data": self.structured_data,
            "reports": self.reports,
            "metadata": self.metadata,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CheckResult":
        """Create from dictionary."""
        return cls(
            name=data.get("name", ""),
            criterion=data.get("criterion", 0),
            description=data.get("description", ""),
            success=data.get("success", False),
            findings=data.get("findings", []),
            structured_data=data.get("structured_data", {}),
            reports=data.get("reports", []),
            metadata=data.get("metadata", {}),
            error=data.get("error"),
        )


class CheckContext:
    """Collects cells, failures and reports while a check runs."""

    def __init__(self, level: CheckLevel):
        self.level = level
        self.dt = settings.quick_dt if level is CheckLevel.QUICK else settings.full_dt
        self.failures: List[str] = []
        self.notes: List[str] = []
        self.cells: List[Dict[str, Any]] = []
        self.reports: List[Dict[str, Any]] = []

    @property
    def full(self) -> bool:
        return self.level is CheckLevel.FULL

    def pick(self, quick: Any, full: Any) -> Any:
        """Level-dependent grid or parameter."""
        return full if self.full else quick

    def expect(self, condition: bool, message: str, **cell: Any) -> bool:
        """Record a cell and, if ``condition`` is false, a failure."""
        cell["ok"] = bool(condition)
        self.cells.append(cell)
        if not condition:
            self.failures.append(message)
        return bool(condition)


class BaseCheck(ABC):
    """Base class for one acceptance criterion."""

    # Check metadata (override in subclasses)
    name: str = "base"
    description: str = "Base check"
    criterion: int = 0

    @abstractmethod
    def evaluate(self, ctx: CheckContext) -> None:
        """Run every cell of the check, recording results on ``ctx``.

        Args:
            ctx: Collector for cells, failures and reports
        """

    def run(self, level: CheckLevel | str = CheckLevel.QUICK) -> CheckResult:
        """Run the check; exceptions become a failed result instead of propagating.

        Args:
            level: quick or full

        Returns:
            Check result with findings and per-cell data
        """
        level = CheckLevel(level)
        ctx = CheckContext(level)
        started = time.perf_counter()
        error = None
        try:
            self.evaluate(ctx)
        except Exception as exc:
            logger.exception("check %s crashed", self.name)
            error = f"{type(exc).__name__}: {exc}"
            ctx.notes.append(traceback.format_exc(limit=3))
        elapsed = time.perf_counter() - started
        logger.info("check %s finished in %.2fs", self.name, elapsed)

        success = error is None and not ctx.failures
        return CheckResult(
            name=self.name,
            criterion=self.criterion,
            description=self.description,
            success=success,
            findings=ctx.failures + ([error] if error else []),
            structured_data={"cells": ctx.cells, "notes": ctx.notes},
            reports=ctx.reports,
            metadata={
                "level": level.value,
                "dt": ctx.dt,
                "elapsed_s": round(elapsed, 3),
                "cells": len(ctx.cells),
                "failed_cells": len(ctx.failures),
            },
            error=error,
        )
