"""Console presenter for displaying results with Rich."""

from typing import Optional

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from cwvote.domain.models import (
    EstimateClass,
    EstimateReport,
    MomentPoint,
    OracleMoments,
    SufficientSummary,
    TailBound,
    WeightReport,
)

CLASS_STYLES = {
    EstimateClass.NEG_INFINITE: "magenta",
    EstimateClass.NEGATIVE_FINITE: "yellow",
    EstimateClass.NON_NEGATIVE_FINITE: "green",
    EstimateClass.POS_INFINITE: "magenta",
}


def _fmt(value: Optional[float], digits: int = 6) -> str:
    if value is None:
        return "-"
    return f"{value:.{digits}g}"


class ConsolePresenter:
    """Presenter for console output using Rich."""

    def __init__(self, quiet: bool = False, console: Optional[Console] = None) -> None:
        self.console = console or Console()
        self.quiet = quiet

    def _show_header(self, title: str) -> None:
        if self.quiet:
            return
        self.console.print(Panel(f"[bold blue]cwvote[/bold blue] - {title}", style="blue"))

    def present_summary(self, summary: SufficientSummary, seed: Optional[int] = None) -> None:
        """Show a sufficient summary."""
        self._show_header("Sufficient Statistics")
        caption = f"n = {summary.n}" + (f", seed = {seed}" if seed is not None else "")
        table = Table(title="Per-group statistic T", caption=caption)
        table.add_column("Group", justify="right", style="cyan")
        table.add_column("N", justify="right")
        table.add_column("T", justify="right")
        table.add_column("Achievable", justify="center")
        for index, group in enumerate(summary.groups):
            table.add_row(
                str(index),
                str(group.N),
                _fmt(group.T, 10),
                "[green]yes[/green]" if group.achievable else "[red]no[/red]",
            )
        self.console.print(table)

    def present_estimate(self, report: EstimateReport) -> None:
        """Show an estimate report."""
        self._show_header("Coupling Estimates")
        table = Table(title="Maximum likelihood estimates", caption=f"n = {report.n}")
        table.add_column("Group", justify="right", style="cyan")
        table.add_column("N", justify="right")
        table.add_column("T", justify="right")
        table.add_column("β̂", justify="right")
        table.add_column("Class")
        table.add_column("Std. error", justify="right")
        table.add_column(f"{report.level:.0%} CI", justify="right")
        for index, group in enumerate(report.groups):
            style = CLASS_STYLES[group.classification]
            interval = (
                f"[{_fmt(group.ci.lower)}, {_fmt(group.ci.upper)}]" if group.ci else "-"
            )
            table.add_row(
                str(index),
                str(group.N),
                _fmt(group.T, 10),
                str(group.beta_hat) if not group.beta_hat.is_finite else _fmt(group.beta_hat.value),
                f"[{style}]{group.classification.value}[/{style}]",
                _fmt(group.std_error),
                interval,
            )
        self.console.print(table)

    def present_weights(self, report: WeightReport) -> None:
        """Show council weights and the resulting democracy deficit."""
        self._show_header("Council Weights")
        table = Table(title="Weights", caption=f"democracy deficit = {_fmt(report.deficit, 10)}")
        table.add_column("Group", justify="right", style="cyan")
        table.add_column("N", justify="right")
        table.add_column("Coupling", justify="right")
        table.add_column("w", justify="right")
        table.add_column("Source")
        table.add_column("υ²", justify="right")
        table.add_column("Std. error", justify="right")
        table.add_column("CI", justify="right")
        for index, group in enumerate(report.groups):
            interval = f"[{_fmt(group.ci.lower)}, {_fmt(group.ci.upper)}]" if group.ci else "-"
            table.add_row(
                str(index),
                str(group.N),
                str(group.coupling),
                _fmt(group.w, 10),
                group.source.value,
                _fmt(group.upsilon_sq),
                _fmt(group.std_error),
                interval,
            )
        self.console.print(table)

    def present_bound(self, bound: TailBound) -> None:
        """Show a tail bound."""
        self._show_header("Tail Bound")
        table = Table(show_header=False)
        table.add_column("Quantity", style="cyan")
        table.add_column("Value", justify="right")
        table.add_row("Kind", bound.kind.value)
        table.add_row("Rate δ", _fmt(bound.delta, 10))
        table.add_row("n", str(bound.n))
        table.add_row("Prefactor", _fmt(bound.prefactor))
        table.add_row("Bound", f"[bold]{_fmt(bound.bound, 10)}[/bold]")
        self.console.print(table)

    def present_moments(self, points: list[MomentPoint]) -> None:
        """Show a moment curve."""
        self._show_header("Moment Curves")
        table = Table(title="θ_N(β), 𝕍 S² and E|S|")
        for column in ("N", "β", "θ_N", "𝕍 S²", "E|S|"):
            table.add_column(column, justify="right")
        for point in points:
            table.add_row(
                str(point.N),
                _fmt(point.beta),
                _fmt(point.theta, 10),
                _fmt(point.var_s2, 10),
                _fmt(point.eabs, 10),
            )
        self.console.print(table)

    def present_oracle(self, pairs: list[tuple[OracleMoments, OracleMoments]]) -> None:
        """Show brute-force and level-sum values side by side."""
        self._show_header("Enumeration Check")
        table = Table(title="Full enumeration vs level sums")
        table.add_column("N", justify="right", style="cyan")
        table.add_column("β", justify="right")
        table.add_column("Quantity")
        table.add_column("Enumeration", justify="right")
        table.add_column("Levels", justify="right")
        table.add_column("Rel. diff", justify="right")
        for reference, levels in pairs:
            for name in ("log_z", "es2", "es4", "eabs", "eabs3"):
                expected = getattr(reference, name)
                actual = getattr(levels, name)
                scale = max(abs(expected), 1e-300)
                table.add_row(
                    str(reference.N),
                    _fmt(reference.beta),
                    name,
                    _fmt(expected, 15),
                    _fmt(actual, 15),
                    f"{abs(actual - expected) / scale:.1e}",
                )
            table.add_section()
        self.console.print(table)

    def present_written(self, *paths: object) -> None:
        """Confirm written output files."""
        if self.quiet:
            return
        for path in paths:
            self.console.print(f"[green]wrote[/green] {path}")
