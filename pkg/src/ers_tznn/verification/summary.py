"""Aggregate verification results and their rendering."""

from dataclasses import dataclass, field
from typing import Any, Dict, List

from rich.console import Console
from rich.table import Table

from ers_tznn.verification.base import CheckResult

console = Console()


@dataclass
class VerificationSummary:
    """All check results of one verification run."""

    level: str
    results: List[CheckResult] = field(default_factory=list)
    elapsed_s: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.results) and all(r.success for r in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.success]

    def get_summary(self) -> Dict[str, Any]:
        """Counts for the header table."""
        cells = sum(r.metadata.get("cells", 0) for r in self.results)
        failed_cells = sum(r.metadata.get("failed_cells", 0) for r in self.results)
        return {
            "level": self.level,
            "checks": len(self.results),
            "passed_checks": len(self.results) - len(self.failures),
            "cells": cells,
            "failed_cells": failed_cells,
            "reports": sum(len(r.reports) for r in self.results),
            "elapsed_s": round(self.elapsed_s, 2),
            "pass": self.passed,
        }

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the ``verify.json`` layout."""
        return {
            "summary": self.get_summary(),
            "checks": [r.to_dict() for r in self.results],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerificationSummary":
        """Create from a loaded ``verify.json``."""
        summary = data.get("summary", {})
        return cls(
            level=summary.get("level", "quick"),
            results=[CheckResult.from_dict(r) for r in data.get("checks", [])],
            elapsed_s=summary.get("elapsed_s", 0.0),
        )

    def print_summary(self, out: Console | None = None, show_findings: int = 5):
        """Print the verification tables."""
        out = out or console
        summary = self.get_summary()

        table = Table(title=f"Verification ({self.level})", show_header=True)
        table.add_column("#", style="cyan", justify="right")
        table.add_column("Check", style="cyan")
        table.add_column("Cells", justify="right")
        table.add_column("Failed", justify="right")
        table.add_column("Time (s)", justify="right", style="dim")
        table.add_column("Result")
        for result in self.results:
            status = "[green]PASS[/green]" if result.success else "[red]FAIL[/red]"
            table.add_row(
                str(result.criterion),
                result.name,
                str(result.metadata.get("cells", 0)),
                str(result.metadata.get("failed_cells", 0)),
                f"{result.metadata.get('elapsed_s', 0.0):.2f}",
                status,
            )
        out.print(table)

        verdict = "[bold green]all checks passed[/bold green]" if self.passed else (
            f"[bold red]{len(self.failures)} of {summary['checks']} checks failed[/bold red]"
        )
        out.print(
            f"{verdict}  [dim]{summary['cells']} cells, {summary['reports']} reports, "
            f"{summary['elapsed_s']:.1f}s[/dim]"
        )

        for result in self.failures:
            out.print(
                f"\n[bold red]✗ {result.criterion}. {result.name}[/bold red]: "
                f"{result.description}"
            )
            for finding in result.findings[:show_findings]:
                out.print(f"  [red]•[/red] {finding}")
            hidden = len(result.findings) - show_findings
            if hidden > 0:
                out.print(f"  [dim]... {hidden} more[/dim]")
