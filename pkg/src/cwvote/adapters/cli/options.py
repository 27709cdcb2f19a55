"""Parsing of list, grid and interval option values."""

import math
from typing import Optional

import click

from cwvote.domain.errors import CwVoteError
from cwvote.domain.models import ClosedInterval, ClosedSet, GroupSpec

GRID_TOL = 1e-12
MAX_GRID_POINTS = 1_000_000


def _split(value: str) -> list[str]:
    return [part.strip() for part in value.split(",") if part.strip()]


def parse_sizes(value: Optional[str], param: str = "--sizes") -> list[int]:
    """Parse "5,7" into [5, 7]."""
    if value is None:
        return []
    try:
        sizes = [int(part) for part in _split(value)]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}", param_hint=param) from None
    if not sizes:
        raise click.BadParameter("at least one group size is required", param_hint=param)
    return sizes


def parse_floats(value: Optional[str], param: str = "--beta") -> list[float]:
    """Parse "0.8,1.2" into [0.8, 1.2]."""
    if value is None:
        return []
    try:
        values = [float(part) for part in _split(value)]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}", param_hint=param) from None
    if not values:
        raise click.BadParameter("at least one value is required", param_hint=param)
    return values


def parse_model(sizes: Optional[str], betas: Optional[str]) -> list[GroupSpec]:
    """Pair --sizes with --beta into group specifications.

    Raises:
        click.UsageError: If either list is missing or the lengths differ

    """
    if sizes is None or betas is None:
        raise click.UsageError("--sizes and --beta are both required")
    size_list = parse_sizes(sizes)
    beta_list = parse_floats(betas)
    if len(size_list) != len(beta_list):
        raise click.UsageError(
            f"--sizes has {len(size_list)} entries but --beta has {len(beta_list)}"
        )
    return [GroupSpec(N=N, beta=beta) for N, beta in zip(size_list, beta_list)]


def parse_beta_grid(value: str) -> list[float]:
    """Parse "start:stop:step" into an inclusive grid.

    The stop value is included when it lies on the grid within a relative
    tolerance of 1e-12 of the step.
    """
    parts = value.split(":")
    if len(parts) != 3:
        raise click.BadParameter(f"expected start:stop:step, got {value!r}", param_hint="--beta-grid")
    try:
        start, stop, step = (float(part) for part in parts)
    except ValueError:
        raise click.BadParameter(f"non-numeric grid {value!r}", param_hint="--beta-grid") from None
    if not all(math.isfinite(x) for x in (start, stop, step)) or step <= 0 or stop < start:
        raise click.BadParameter(
            "grid needs finite start <= stop and a positive step", param_hint="--beta-grid"
        )
    count = math.floor((stop - start) / step + GRID_TOL) + 1
    if count > MAX_GRID_POINTS:
        raise click.BadParameter(f"grid has {count} points, more than {MAX_GRID_POINTS}", param_hint="--beta-grid")
    return [start + index * step for index in range(count)]


def parse_closed_set(value: str) -> ClosedSet:
    """Parse "a:b,c:d" into closed intervals; "inf" and "-inf" are allowed."""
    intervals = []
    for part in _split(value):
        bounds = part.split(":")
        if len(bounds) != 2:
            raise click.BadParameter(f"expected lower:upper, got {part!r}", param_hint="--set")
        try:
            intervals.append(ClosedInterval(lower=float(bounds[0]), upper=float(bounds[1])))
        except (ValueError, CwVoteError) as e:
            raise click.BadParameter(f"invalid interval {part!r}: {e}", param_hint="--set") from None
    if not intervals:
        raise click.BadParameter("closed set must contain at least one interval", param_hint="--set")
    return tuple(intervals)
