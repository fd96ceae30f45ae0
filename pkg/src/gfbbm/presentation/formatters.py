"""Formatters for console output."""

import json
from typing import Any, Dict, Tuple

import pandas as pd
from tabulate import tabulate

from ..models import SolitaryWave, StabilityReport


def _json(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True, default=str)


class TableFormatter:
    """Formats results for tabular display."""

    @staticmethod
    def format_wave(wave: SolitaryWave, pohozaev: Tuple[float, float]) -> str:
        """Format a converged wave as a table."""
        measured, predicted = pohozaev
        rows = [
            ["alpha", wave.params.alpha],
            ["p", wave.params.p],
            ["c", wave.params.c],
            ["Branch", wave.branch.value],
            ["Peak", f"{wave.peak:.10g}"],
            ["Residual", f"{wave.residual:.3e}"],
            ["Iterations", wave.iterations],
            ["Pohozaev measured", f"{measured:.10g}"],
            ["Pohozaev predicted", f"{predicted:.10g}"],
        ]
        return tabulate(rows, headers=["Quantity", "Value"], tablefmt="grid")

    @staticmethod
    def format_report(report: StabilityReport) -> str:
        """Format a stability report as a table."""
        rows = [[key, "" if value is None else value] for key, value in report.to_dict().items()]
        return tabulate(rows, headers=["Field", "Value"], tablefmt="grid")

    @staticmethod
    def format_region_counts(frame: pd.DataFrame) -> str:
        """Lattice points per verdict."""
        counts = frame["verdict"].value_counts().sort_index()
        rows = [[verdict, count] for verdict, count in counts.items()]
        return tabulate(rows, headers=["Verdict", "Points"], tablefmt="grid")

    @staticmethod
    def format_frame(frame: pd.DataFrame, limit: int = 20) -> str:
        """First ``limit`` rows of a table."""
        if frame.empty:
            return "No rows."
        table = tabulate(frame.head(limit), headers="keys", tablefmt="grid", showindex=False)
        if len(frame) > limit:
            table += f"\n\n... and {len(frame) - limit} more rows"
        return table

    @staticmethod
    def format_summary(summary: Dict[str, Any]) -> str:
        rows = [[key, value] for key, value in summary.items() if not isinstance(value, list)]
        return tabulate(rows, headers=["Quantity", "Value"], tablefmt="grid")


class ResultFormatter:
    """Formats results as a table or as JSON."""

    def __init__(self, output_format: str = "table"):
        """Initialize with output format."""
        self.output_format = output_format.lower()
        self.table_formatter = TableFormatter()

    def format_wave(self, wave: SolitaryWave, pohozaev: Tuple[float, float]) -> str:
        if self.output_format == "json":
            measured, predicted = pohozaev
            return _json({
                **wave.params.to_dict(),
                "branch": wave.branch.value,
                "peak": wave.peak,
                "residual": wave.residual,
                "iterations": wave.iterations,
                "pohozaev_measured": measured,
                "pohozaev_predicted": predicted,
            })
        return self.table_formatter.format_wave(wave, pohozaev)

    def format_report(self, report: StabilityReport) -> str:
        if self.output_format == "json":
            return _json(report.to_dict())
        return self.table_formatter.format_report(report)

    def format_summary(self, summary: Dict[str, Any]) -> str:
        if self.output_format == "json":
            return _json(summary)
        return self.table_formatter.format_summary(summary)

    def format_frame(self, frame: pd.DataFrame, limit: int = 20) -> str:
        if self.output_format == "json":
            return frame.head(limit).to_json(orient="records", indent=2)
        return self.table_formatter.format_frame(frame, limit)
