"""Two-tier voting: council votes, democracy deficit and council weights.

Each group elects a representative who casts χ_λ = sign(S_λ) (ties go to -1)
in a council, where the vote is weighted by w_λ. The democracy deficit
E[S̄ - Σ w_λ χ_λ]² measures how far the council result strays from the
popular margin S̄ = Σ S_λ.
"""

from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING, Union

import numpy as np

from cwvote.domain.curie_weiss import (
    abs_moment,
    abs_moment_inverse,
    magnetization_pmf,
    moment_s2,
    zero_probability,
)
from cwvote.domain.errors import (
    CwVoteError,
    OutOfRangeError,
    PreconditionError,
    ShapeError,
)
from cwvote.domain.large_deviations import (
    exponential_bound,
    infimum_over_set,
    rate_j,
    validate_sample_size,
)
from cwvote.domain.models import (
    ConfidenceInterval,
    ExtendedCoupling,
    GroupWeight,
    TailKind,
    WeightReport,
    WeightSource,
    validate_population,
)
from cwvote.domain.numerics import two_sided_z

if TYPE_CHECKING:
    from collections.abc import Sequence

    from cwvote.domain.models import (
        ClosedSet,
        EstimateReport,
        GroupSpec,
        RateContext,
        TailBound,
    )

logger = logging.getLogger(__name__)


def council_votes(magnetizations: Sequence[int]) -> list[int]:
    """χ_λ = +1 if S_λ > 0 and -1 otherwise, group by group."""
    return [1 if int(s) > 0 else -1 for s in magnetizations]


def deficit_at(
    sizes: Sequence[int],
    couplings: Sequence[Union[ExtendedCoupling, float]],
    weights: Sequence[float],
) -> float:
    """Exact democracy deficit for groups given by size and extended coupling.

    Uses independence of the groups and E S_λ = 0, E S_λ χ_λ = E|S_λ|,
    E χ_λ = -P(S_λ = 0):

        Σ_λ (E S_λ² - 2 w_λ E|S_λ| + w_λ²) + Σ_{λ≠μ} w_λ w_μ P(S_λ=0) P(S_μ=0)

    Raises:
        ShapeError: If the three sequences differ in length or are empty

    """
    if not sizes or not len(sizes) == len(couplings) == len(weights):
        raise ShapeError(
            f"need one coupling and one weight per group: got {len(sizes)} sizes, "
            f"{len(couplings)} couplings, {len(weights)} weights"
        )
    diagonal = 0.0
    tie_terms = []
    for N, coupling, w in zip(sizes, couplings, weights):
        w = float(w)
        diagonal += moment_s2(N, coupling) - 2.0 * w * abs_moment(N, coupling, 1) + w * w
        tie_terms.append(w * zero_probability(N, coupling))
    ties = np.asarray(tie_terms)
    cross = float(ties.sum() ** 2 - ties @ ties)
    return diagonal + cross


def democracy_deficit(model: Sequence[GroupSpec], weights: Sequence[float]) -> float:
    """E[S̄ - Σ w_λ χ_λ]² at the true couplings of the model."""
    return deficit_at(
        [spec.N for spec in model], [spec.beta for spec in model], weights
    )


def optimal_weights(model: Sequence[GroupSpec]) -> WeightReport:
    """Council weights w_λ = E|S_λ| for a model with non-negative couplings.

    Raises:
        PreconditionError: If a coupling is negative (tagged with its group)

    """
    if not model:
        raise ShapeError("model must contain at least one group")
    groups = []
    for index, spec in enumerate(model):
        if spec.beta < 0.0:
            raise PreconditionError(
                f"optimal weights require beta >= 0, got {spec.beta!r}"
            ).tag_group(index)
        groups.append(
            GroupWeight(
                N=spec.N,
                coupling=ExtendedCoupling.finite(spec.beta),
                w=abs_moment(spec.N, spec.beta, 1),
                source=WeightSource.EXACT,
            )
        )
    weights = [group.w for group in groups]
    return WeightReport(groups=tuple(groups), deficit=democracy_deficit(model, weights))


def weight_variance(N: int, beta: float) -> float:
    """υ² = (E|S|³ - E|S| E S²)² / 𝕍 S², the delta-method variance of ŵ.

    The covariance in the numerator is evaluated in centered form. When 𝕍 S²
    underflows to zero the law is degenerate and υ² is reported as 0.
    """
    N = validate_population(N)
    if not math.isfinite(beta):
        raise OutOfRangeError(f"coupling must be finite here, got {beta!r}")
    pmf = magnetization_pmf(N, beta)
    magnitudes = np.abs(pmf.support).astype(float)
    squares = magnitudes * magnitudes
    abs_centered = magnitudes - pmf.probs @ magnitudes
    sq_centered = squares - pmf.probs @ squares
    variance = float(pmf.probs @ (sq_centered * sq_centered))
    if variance <= 0.0:
        return 0.0
    covariance = float(pmf.probs @ (abs_centered * sq_centered))
    return covariance * covariance / variance


def estimate_weights(
    N: int, beta_hat: ExtendedCoupling, n: int, level: float = 0.95
) -> GroupWeight:
    """Plug-in weight ŵ = E_{β̂,N}|S| for one group.

    Args:
        N: Population size
        beta_hat: Estimated coupling, possibly infinite
        n: Sample size behind the estimate
        level: Confidence level of the Wald interval

    Returns:
        Weight entry; for finite β̂ it carries υ², sqrt(υ²/n) and the interval

    """
    N = validate_population(N)
    w = abs_moment(N, beta_hat, 1)
    if not beta_hat.is_finite:
        return GroupWeight(N=N, coupling=beta_hat, w=w, source=WeightSource.ESTIMATED)
    if n < 1:
        raise OutOfRangeError(f"sample size must be >= 1, got {n!r}")
    upsilon_sq = weight_variance(N, beta_hat.value)
    std_error = math.sqrt(upsilon_sq / n)
    half_width = two_sided_z(level) * std_error
    return GroupWeight(
        N=N,
        coupling=beta_hat,
        w=w,
        source=WeightSource.ESTIMATED,
        upsilon_sq=upsilon_sq,
        std_error=std_error,
        ci=ConfidenceInterval(lower=w - half_width, upper=w + half_width, level=level),
    )


def plug_in_weights(report: EstimateReport, level: float = 0.95) -> WeightReport:
    """Plug-in weights for every group of an estimate report.

    The deficit is evaluated at the estimated couplings, infinite ones included.
    """
    groups = []
    for index, estimate in enumerate(report.groups):
        try:
            groups.append(estimate_weights(estimate.N, estimate.beta_hat, report.n, level))
        except CwVoteError as error:
            raise error.tag_group(index) from None
    deficit = deficit_at(
        [group.N for group in groups],
        [group.coupling for group in groups],
        [group.w for group in groups],
    )
    return WeightReport(groups=tuple(groups), deficit=deficit)


def rate_h(ctx: RateContext, y: float) -> float:
    """H(y) = J(b) where b is the coupling with E_{b,N}|S| = y.

    Returns:
        The rate of the plug-in weight; +inf for y outside [κ, N]

    """
    if math.isnan(y):
        raise OutOfRangeError("weight rate evaluated at NaN")
    if not ctx.N % 2 <= y <= ctx.N:
        return math.inf
    return rate_j(ctx, abs_moment_inverse(ctx.N, y))


def weight_tail_bound(ctx: RateContext, n: int, closed_set: ClosedSet) -> TailBound:
    """P{ŵ ∈ K} ≤ 2 exp(-n inf_K H) for a union K of closed intervals.

    Raises:
        InvalidSetError: If K contains the true weight E_{β,N}|S|

    """
    n = validate_sample_size(n)
    center = abs_moment(ctx.N, ctx.beta, 1)
    delta = infimum_over_set(lambda y: rate_h(ctx, y), center, closed_set)
    return exponential_bound(TailKind.CLOSED_SET_WEIGHT, delta, n, 1)
