"""Residual reports and the markdown suite summary.

Every check produces a ResidualReport. A suite run collects them into
SuiteResults, which SuiteWriter renders as a markdown summary:

- Overall verdict and failure count
- One table row per check (points, max residual, tolerance)
- Diagnostics of each failing check
"""

from __future__ import annotations

import json
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any

import numpy as np

# residual kinds recorded per report
RELATIVE = "relative"
ABSOLUTE = "absolute"
MIXED = "mixed"
REDUCTION = "reduction"
PDE = "pde"
SLOPE = "slope"
CONTROL = "control"

RELATIVE_FLOOR = 1e-6


def _jsonable(value: Any) -> Any:
    """Convert grid points and diagnostics to JSON-compatible values."""
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, tuple | list):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, np.generic):
        return _jsonable(value.item())
    return value


def point_residual(lhs: complex, rhs: complex) -> tuple[float, str]:
    """Residual of one identity point.

    Relative |L-R|/|R| when |R| >= 1e-6, absolute |L-R| otherwise.

    Returns:
        (residual, kind).
    """
    diff = abs(complex(lhs) - complex(rhs))
    scale = abs(complex(rhs))
    if scale >= RELATIVE_FLOOR:
        return diff / scale, RELATIVE
    return diff, ABSOLUTE


def combined_kind(kinds: Sequence[str]) -> str:
    """Single kind for a report: the common kind, or 'mixed'."""
    distinct = set(kinds)
    if len(distinct) == 1:
        return distinct.pop()
    if not distinct:
        return RELATIVE
    return MIXED


@dataclass
class ResidualReport:
    """Per-point residuals of one identity check.

    Attributes:
        check_name: Name of the check, e.g. "eigen" or "reduction/tricomi".
        grid: Evaluation points (x, complex z, (x, t) pairs or labels).
        residuals: Nonnegative residual per point; inf marks a failed point.
        tolerance: Pass threshold for max_residual.
        residual_kind: How residuals were normalised.
        diagnostics: Terms-used statistics, skipped entries, errors.
    """

    check_name: str
    grid: list[Any]
    residuals: list[float]
    tolerance: float
    residual_kind: str = RELATIVE
    diagnostics: dict[str, Any] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        if not self.residuals:
            return 0.0
        if any(math.isnan(r) for r in self.residuals):
            return math.inf
        return max(self.residuals)

    @property
    def passed(self) -> bool:
        """True when every residual is within tolerance."""
        return all(r <= self.tolerance for r in self.residuals)

    @property
    def verdict(self) -> str:
        """Short label used in summaries."""
        if not self.passed:
            return "FAIL"
        if self.max_residual == 0.0:
            return "exact"
        return "pass"

    def to_dict(self) -> dict[str, Any]:
        return {
            "check_name": self.check_name,
            "grid": _jsonable(self.grid),
            "residuals": [float(r) for r in self.residuals],
            "max_residual": float(self.max_residual),
            "tolerance": float(self.tolerance),
            "passed": self.passed,
            "residual_kind": self.residual_kind,
            "diagnostics": _jsonable(self.diagnostics),
        }

    def to_json(self, indent: int | None = 2) -> str:
        """Serialize as JSON; non-finite residuals become Infinity."""
        return json.dumps(self.to_dict(), indent=indent)


def merge_reports(
    name: str,
    reports: Sequence[ResidualReport],
    tolerance: float | None = None,
) -> ResidualReport:
    """Concatenate reports point-wise under one name.

    Grid entries keep their order; integer diagnostics under "skipped" are
    summed, everything else is kept per part.
    """
    grid: list[Any] = []
    residuals: list[float] = []
    skipped: dict[str, int] = {}
    parts: list[dict[str, Any]] = []
    for report in reports:
        grid.extend(report.grid)
        residuals.extend(report.residuals)
        for reason, count in report.diagnostics.get("skipped", {}).items():
            skipped[reason] = skipped.get(reason, 0) + count
        parts.append({"check_name": report.check_name, **report.diagnostics})
    tol = tolerance if tolerance is not None else max((r.tolerance for r in reports), default=0.0)
    return ResidualReport(
        check_name=name,
        grid=grid,
        residuals=residuals,
        tolerance=tol,
        residual_kind=combined_kind([r.residual_kind for r in reports]),
        diagnostics={"skipped": skipped, "parts": parts},
    )


@dataclass
class SuiteResults:
    """All reports of one suite run.

    Attributes:
        reports: Reports ordered by check name.
        tolerances: Tolerances the suite ran with, by check family.
        started_at: When the run started.
        completed_at: When the run completed.
    """

    reports: list[ResidualReport] = field(default_factory=list)
    tolerances: dict[str, float] = field(default_factory=dict)
    started_at: datetime = field(default_factory=datetime.now)
    completed_at: datetime | None = None

    @property
    def failures(self) -> int:
        return sum(1 for r in self.reports if not r.passed)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "failures": self.failures,
            "tolerances": self.tolerances,
            "reports": [r.to_dict() for r in self.reports],
        }


class SuiteWriter:
    """Writer for markdown suite summaries.

    Example:
        >>> results = run_suite(SuiteConfig())
        >>> writer = SuiteWriter()
        >>> writer.write(results, Path("SUITE.md"))
    """

    def format(self, results: SuiteResults) -> str:
        """Format results as markdown.

        Args:
            results: The suite results to format

        Returns:
            Formatted markdown string
        """
        status = "PASSED" if results.passed else f"FAILED ({results.failures} checks)"
        lines = [
            "# Verification Suite Results",
            "",
            f"**Date:** {results.started_at.strftime('%Y-%m-%d')}",
            f"**Status:** {status}",
        ]
        if results.completed_at:
            elapsed = (results.completed_at - results.started_at).total_seconds()
            lines.append(f"**Elapsed:** {elapsed:.1f} s")
        lines.append("")

        if results.tolerances:
            lines.extend(["## Tolerances", ""])
            for family, tol in results.tolerances.items():
                lines.append(f"- {family}: {tol:g}")
            lines.append("")

        lines.extend(
            [
                "## Checks",
                "",
                "| Check | Points | Max residual | Tolerance | Kind | Result |",
                "|-------|--------|--------------|-----------|------|--------|",
            ]
        )
        for r in results.reports:
            lines.append(
                f"| {r.check_name} | {len(r.residuals)} | {r.max_residual:.3e} "
                f"| {r.tolerance:g} | {r.residual_kind} | {r.verdict} |"
            )
        lines.append("")

        failing = [r for r in results.reports if not r.passed]
        if failing:
            lines.extend(["## Failures", ""])
            for r in failing:
                lines.append(f"### {r.check_name}")
                worst = max(range(len(r.residuals)), key=lambda i: r.residuals[i])
                lines.append(f"**Worst point:** {_jsonable(r.grid[worst])}")
                for error in r.diagnostics.get("errors", []):
                    lines.append(f"- {error}")
                lines.append("")

        skipped = {
            r.check_name: r.diagnostics["skipped"]
            for r in results.reports
            if r.diagnostics.get("skipped")
        }
        if skipped:
            lines.extend(["## Skipped parameter sets", ""])
            for name, counts in skipped.items():
                detail = ", ".join(f"{reason}: {count}" for reason, count in counts.items())
                lines.append(f"- {name}: {detail}")
            lines.append("")

        return "\n".join(lines)

    def write(self, results: SuiteResults, path: Path) -> None:
        """Write results to a file.

        Args:
            results: The suite results to write
            path: Path to write the summary to
        """
        path.write_text(self.format(results))


__all__ = [
    "ABSOLUTE",
    "CONTROL",
    "MIXED",
    "PDE",
    "REDUCTION",
    "RELATIVE",
    "SLOPE",
    "ResidualReport",
    "SuiteResults",
    "SuiteWriter",
    "combined_kind",
    "merge_reports",
    "point_residual",
]
