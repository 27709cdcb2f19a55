"""CLI commands for cwvote."""

from __future__ import annotations

import functools
import logging
from pathlib import Path
from typing import Any, Callable, Optional, TypeVar

import click
from rich.console import Console
from rich.markup import escape

from cwvote import __version__
from cwvote.adapters.cli.handlers.bounds_handler import BoundsCommandHandler
from cwvote.adapters.cli.handlers.estimate_handler import EstimateCommandHandler
from cwvote.adapters.cli.handlers.moments_handler import MomentsCommandHandler
from cwvote.adapters.cli.handlers.oracle_handler import OracleCommandHandler
from cwvote.adapters.cli.handlers.sample_handler import SampleCommandHandler
from cwvote.adapters.cli.handlers.show_config_handler import ShowConfigCommandHandler
from cwvote.adapters.cli.handlers.weights_handler import WeightsCommandHandler
from cwvote.adapters.cli.options import (
    parse_beta_grid,
    parse_closed_set,
    parse_model,
    parse_sizes,
)
from cwvote.domain.errors import CwVoteError
from cwvote.domain.models import TailKind
from cwvote.infrastructure.log import configure_logging

console = Console(stderr=True)
logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])

OUT_OPTION = click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Write the result to this file instead of printing a table",
)


def handle_errors(command: F) -> F:
    """Map cwvote errors onto their exit codes with a red message."""

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return command(*args, **kwargs)
        except click.ClickException:
            raise
        except click.exceptions.Exit:
            raise
        except CwVoteError as e:
            console.print(f"[red]Error: {escape(str(e))}[/red]")
            raise click.exceptions.Exit(e.exit_code) from e
        except Exception as e:
            logger.debug("unexpected failure", exc_info=True)
            console.print(f"[red]Error: {escape(str(e))}[/red]")
            raise click.ClickException(str(e)) from e

    return wrapper  # type: ignore[return-value]


@click.group()
@click.version_option(version=__version__, prog_name="cwvote")
@click.option("--verbose", "-v", is_flag=True, help="Show debug logging")
@click.option("--quiet", "-q", is_flag=True, help="Only print results and errors")
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Path to configuration file",
)
@click.pass_context
def cli(ctx: click.Context, verbose: bool, quiet: bool, config_path: Optional[Path]) -> None:
    """cwvote - Curie-Weiss voting model estimation and council weights."""
    configure_logging(verbose=verbose, quiet=quiet)
    ctx.obj = {"config_path": config_path, "quiet": quiet}


def _handler_args(obj: dict[str, Any], **overrides: Any) -> dict[str, Any]:
    return {
        "config_path": obj["config_path"],
        "config_overrides": overrides,
        "quiet": obj["quiet"],
    }


@cli.command()
@click.option("--sizes", required=True, help="Group sizes, e.g. 5,7")
@click.option("--beta", "betas", required=True, help="Couplings, e.g. 0.8,1.2")
@click.option("--n", "n", type=int, default=None, help="Number of observations")
@click.option("--seed", type=int, default=None, help="64-bit random seed")
@OUT_OPTION
@click.option(
    "--summary-out",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Summary JSON path (default: <out> with suffix .summary.json)",
)
@click.pass_obj
@handle_errors
def sample(
    obj: dict[str, Any],
    sizes: str,
    betas: str,
    n: Optional[int],
    seed: Optional[int],
    out: Optional[Path],
    summary_out: Optional[Path],
) -> None:
    """Draw voting configurations from the Curie-Weiss model."""
    model = parse_model(sizes, betas)
    handler = SampleCommandHandler(**_handler_args(obj, n=n, seed=seed))
    handler.execute(model=model, out=out, summary_out=summary_out)


@cli.command()
@click.option(
    "--input",
    "input_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Vote CSV (one observation per row, entries -1 or 1)",
)
@click.option(
    "--summary",
    "summary_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help='Summary JSON {"n": ..., "groups": [{"N": ..., "T": ...}]}',
)
@click.option("--sizes", default=None, help="Group sizes of the CSV columns")
@click.option("--level", type=float, default=None, help="Confidence level")
@OUT_OPTION
@click.pass_obj
@handle_errors
def estimate(
    obj: dict[str, Any],
    input_path: Optional[Path],
    summary_path: Optional[Path],
    sizes: Optional[str],
    level: Optional[float],
    out: Optional[Path],
) -> None:
    """Estimate the coupling of every group by maximum likelihood."""
    if (input_path is None) == (summary_path is None):
        raise click.UsageError("pass exactly one of --input or --summary")
    if summary_path is not None and sizes is not None:
        raise click.UsageError("--sizes only applies to --input")
    handler = EstimateCommandHandler(**_handler_args(obj, level=level))
    handler.execute(
        input_path=input_path,
        summary_path=summary_path,
        sizes=parse_sizes(sizes),
        out=out,
    )


@cli.command()
@click.option("--sizes", default=None, help="Group sizes, e.g. 5,7")
@click.option("--beta", "betas", default=None, help="True couplings, e.g. 0.8,1.2")
@click.option(
    "--from-report",
    "report_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Estimate report JSON for plug-in weights",
)
@click.option("--level", type=float, default=None, help="Confidence level")
@OUT_OPTION
@click.pass_obj
@handle_errors
def weights(
    obj: dict[str, Any],
    sizes: Optional[str],
    betas: Optional[str],
    report_path: Optional[Path],
    level: Optional[float],
    out: Optional[Path],
) -> None:
    """Compute council weights and the democracy deficit."""
    if report_path is not None and (sizes is not None or betas is not None):
        raise click.UsageError("--from-report cannot be combined with --sizes/--beta")
    model = parse_model(sizes, betas) if report_path is None else None
    handler = WeightsCommandHandler(**_handler_args(obj, level=level))
    handler.execute(model=model, report_path=report_path, out=out)


@cli.command()
@click.option("--sizes", required=True, help="Group sizes, e.g. 5,7")
@click.option("--beta", "betas", required=True, help="True couplings")
@click.option("--n", "n", type=int, default=None, help="Sample size")
@click.option(
    "--kind",
    type=click.Choice([kind.value for kind in TailKind]),
    required=True,
    help="Event to bound",
)
@click.option(
    "--set",
    "sets",
    multiple=True,
    help='Closed set "a:b,c:d" for one group; repeat once per group',
)
@OUT_OPTION
@click.pass_obj
@handle_errors
def bounds(
    obj: dict[str, Any],
    sizes: str,
    betas: str,
    n: Optional[int],
    kind: str,
    sets: tuple[str, ...],
    out: Optional[Path],
) -> None:
    """Evaluate an exponential tail bound."""
    tail_kind = TailKind(kind)
    needs_sets = tail_kind in (TailKind.CLOSED_SET_K, TailKind.CLOSED_SET_WEIGHT)
    if needs_sets and not sets:
        raise click.UsageError(f"--kind {kind} needs --set")
    if not needs_sets and sets:
        raise click.UsageError(f"--set does not apply to --kind {kind}")
    model = parse_model(sizes, betas)
    parsed_sets = [parse_closed_set(value) for value in sets] if sets else None
    handler = BoundsCommandHandler(**_handler_args(obj, n=n))
    handler.execute(model=model, kind=tail_kind, sets=parsed_sets, out=out)


@cli.command()
@click.option("--sizes", required=True, help="Group sizes, e.g. 5,7")
@click.option("--beta-grid", required=True, help="Coupling grid start:stop:step (inclusive)")
@OUT_OPTION
@click.pass_obj
@handle_errors
def moments(obj: dict[str, Any], sizes: str, beta_grid: str, out: Optional[Path]) -> None:
    """Tabulate θ_N(β), Var S² and E|S| over a grid of couplings."""
    handler = MomentsCommandHandler(**_handler_args(obj))
    handler.execute(sizes=parse_sizes(sizes), betas=parse_beta_grid(beta_grid), out=out)


@cli.command()
@click.option("--sizes", required=True, help="Group sizes (each at most 16)")
@click.option("--beta", "betas", required=True, help="Couplings")
@OUT_OPTION
@click.pass_obj
@handle_errors
def oracle(obj: dict[str, Any], sizes: str, betas: str, out: Optional[Path]) -> None:
    """Compare level sums with full enumeration of all configurations."""
    handler = OracleCommandHandler(**_handler_args(obj))
    handler.execute(model=parse_model(sizes, betas), out=out)


@cli.command(name="show-config")
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["console", "json"]),
    default="console",
    help="Output format",
)
@click.pass_obj
@handle_errors
def show_config(obj: dict[str, Any], output_format: str) -> None:
    """Show the effective configuration."""
    handler = ShowConfigCommandHandler(**_handler_args(obj))
    handler.execute(output_format=output_format)
