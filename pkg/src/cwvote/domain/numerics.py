"""Shared numerical helpers: monotone root finding and normal quantiles."""

from __future__ import annotations

import logging
import math
from typing import Callable, Optional

from scipy.special import ndtr, ndtri

from cwvote.domain.errors import ConvergenceError, OutOfRangeError

logger = logging.getLogger(__name__)

BISECTION_REL_TOL = 1e-12
MAX_DOUBLINGS = 80
MAX_ITERATIONS = 400


def bisect_increasing(
    func: Callable[[float], float],
    target: float,
    *,
    rel_tol: float = BISECTION_REL_TOL,
    f_tol: Optional[float] = None,
) -> float:
    """Solve ``func(x) = target`` for a strictly increasing ``func``.

    The bracket starts at [-1, 1] and is doubled outwards until it encloses
    the target; plain bisection follows. Iteration stops once the bracket is
    narrower than ``rel_tol * max(1, |x|)``, once ``func`` hits the target
    exactly, or (when ``f_tol`` is given) once ``|func(x) - target| < f_tol``.

    Args:
        func: Strictly increasing function of one real variable
        target: Value to reach
        rel_tol: Relative bracket width at which to stop
        f_tol: Optional absolute residual at which to stop

    Returns:
        The approximate solution

    Raises:
        ConvergenceError: If the target cannot be bracketed

    """
    lo, hi = -1.0, 1.0
    f_lo = func(lo)
    doublings = 0
    while f_lo > target:
        hi = lo
        lo *= 2.0
        f_lo = func(lo)
        doublings += 1
        if doublings > MAX_DOUBLINGS:
            raise ConvergenceError(f"cannot bracket target {target!r} from below")
    f_hi = func(hi)
    while f_hi < target:
        lo = hi
        hi = 2.0 * hi if hi > 0 else 1.0
        f_hi = func(hi)
        doublings += 1
        if doublings > MAX_DOUBLINGS:
            raise ConvergenceError(f"cannot bracket target {target!r} from above")

    if f_lo == target:
        return lo
    if f_hi == target:
        return hi

    for _ in range(MAX_ITERATIONS):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            return mid
        f_mid = func(mid)
        if f_mid == target or (f_tol is not None and abs(f_mid - target) < f_tol):
            return mid
        if f_mid < target:
            lo = mid
        else:
            hi = mid
        if hi - lo < rel_tol * max(1.0, abs(mid)):
            return 0.5 * (lo + hi)

    logger.warning("bisection hit the iteration cap for target %r", target)
    return 0.5 * (lo + hi)


def normal_quantile(p: float) -> float:
    """Standard normal quantile Φ⁻¹(p) for 0 < p < 1."""
    if not 0.0 < p < 1.0:
        raise OutOfRangeError(f"probability must lie in (0, 1), got {p!r}")
    return float(ndtri(p))


def two_sided_z(level: float) -> float:
    """Critical value z_{(1+level)/2} of a two-sided interval."""
    if not 0.0 < level < 1.0:
        raise OutOfRangeError(f"confidence level must lie in (0, 1), got {level!r}")
    return normal_quantile(0.5 * (1.0 + level))


def normal_two_sided_tail(x: float) -> float:
    """P{|Z| ≥ x} for a standard normal Z."""
    return float(2.0 * ndtr(-abs(x))) if math.isfinite(x) else 0.0
