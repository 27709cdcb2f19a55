"""Large deviations of T and β̂: cumulant generating function of S², its
Legendre transform, the atypicality constants δ and δ̄, the rate functions J
and 𝐉, and the exponential tail bounds they yield.
"""

from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING, Callable, Optional, Union

import numpy as np
from scipy.special import logsumexp

from cwvote.domain.curie_weiss import magnetization_pmf
from cwvote.domain.errors import (
    CwVoteError,
    InvalidSetError,
    OutOfRangeError,
    PreconditionError,
    ShapeError,
)
from cwvote.domain.models import (
    ExtendedCoupling,
    GroupSpec,
    RateContext,
    TailBound,
    TailKind,
    validate_population,
)
from cwvote.domain.numerics import bisect_increasing

if TYPE_CHECKING:
    from collections.abc import Sequence

    from cwvote.domain.models import ClosedSet

logger = logging.getLogger(__name__)

ENTROPY_TOL = 1e-10


def make_rate_context(N: int, beta: float) -> RateContext:
    """Build a rate context at the true coupling (N, β)."""
    N = validate_population(N)
    return RateContext(N=N, beta=float(beta), pmf=magnetization_pmf(N, beta))


def _squares(ctx: RateContext) -> np.ndarray:
    return (ctx.pmf.support * ctx.pmf.support).astype(float)


def cgf_s2(ctx: RateContext, t: float) -> float:
    """Λ_{S²}(t) = ln E exp(t S²) under P_{β,N}; Λ(0) = 0."""
    if t == 0.0:
        return 0.0
    return float(logsumexp(t * _squares(ctx) + ctx.pmf.log_probs))


def cgf_s2_derivative(ctx: RateContext, t: float) -> float:
    """Λ'_{S²}(t), the mean of S² under the exponentially tilted law."""
    exponents = t * _squares(ctx) + ctx.pmf.log_probs
    tilted = np.exp(exponents - logsumexp(exponents))
    return float(tilted @ _squares(ctx))


def _boundary_entropy(ctx: RateContext, square: int) -> float:
    """-ln P(S² = square) for square ∈ {κ², N²}."""
    mask = _squares(ctx) == square
    return float(-logsumexp(ctx.pmf.log_probs[mask]))


def entropy_s2(ctx: RateContext, x: float) -> float:
    """Legendre transform Λ*_{S²}(x) = sup_t {x t - Λ(t)}.

    Args:
        ctx: Rate context at the true coupling
        x: Point at which to evaluate

    Returns:
        The entropy function: +inf outside [κ², N²], -ln P(S² = x) at the two
        boundary points, and x t* - Λ(t*) with Λ'(t*) = x inside

    """
    if math.isnan(x):
        raise OutOfRangeError("entropy function evaluated at NaN")
    low = ctx.N % 2
    high = ctx.N * ctx.N
    if x < low or x > high:
        return math.inf
    if x in (low, high):
        return _boundary_entropy(ctx, int(x))
    t_star = bisect_increasing(lambda t: cgf_s2_derivative(ctx, t), x, f_tol=ENTROPY_TOL)
    return max(0.0, x * t_star - cgf_s2(ctx, t_star))


def delta_atypical(ctx: RateContext) -> float:
    """δ = min{Λ*(N), Λ*(N²)}, the decay rate of P{T ∉ [N, N²)}.

    Raises:
        PreconditionError: If the true coupling is not positive

    """
    if ctx.beta <= 0.0:
        raise PreconditionError(f"atypicality rate requires beta > 0, got {ctx.beta!r}")
    return min(entropy_s2(ctx, float(ctx.N)), entropy_s2(ctx, float(ctx.N * ctx.N)))


def delta_bar(model: Sequence[GroupSpec]) -> float:
    """δ̄ = Σ_λ δ_λ over all groups of the model."""
    if not model:
        raise ShapeError("model must contain at least one group")
    total = 0.0
    for index, spec in enumerate(model):
        try:
            total += delta_atypical(make_rate_context(spec.N, spec.beta))
        except CwVoteError as error:
            raise error.tag_group(index) from None
    return total


def rate_j(ctx: RateContext, y: Union[ExtendedCoupling, float]) -> float:
    """J(y) = Λ*_{S²}(θ_N(y)), the rate function of β̂.

    For finite y this is evaluated through the identity J(y) = KL(P_y ‖ P_β)
    between the laws of S, which holds because tilting P_β by t·S² gives
    P_{β+2Nt}. The infinite endpoints are -ln P(S² = κ²) and -ln P(S² = N²).
    """
    value = y.value if isinstance(y, ExtendedCoupling) else float(y)
    if value == -math.inf:
        return _boundary_entropy(ctx, ctx.N % 2)
    if value == math.inf:
        return _boundary_entropy(ctx, ctx.N * ctx.N)
    if value == ctx.beta:
        return 0.0
    other = magnetization_pmf(ctx.N, value)
    divergence = float(other.probs @ (other.log_probs - ctx.pmf.log_probs))
    return max(0.0, divergence)


def rate_j_vector(model: Sequence[GroupSpec], ys: Sequence[Union[ExtendedCoupling, float]]) -> float:
    """𝐉(y) = Σ_λ J_λ(y_λ)."""
    if len(model) != len(ys):
        raise ShapeError(f"expected {len(model)} couplings, got {len(ys)}")
    return sum(
        rate_j(make_rate_context(spec.N, spec.beta), y) for spec, y in zip(model, ys)
    )


def infimum_over_set(
    rate: Callable[[float], float], center: float, closed_set: ClosedSet
) -> float:
    """Infimum of a rate function with monotone wings over a union of intervals.

    The rate function must vanish only at ``center`` and be decreasing to its
    left and increasing to its right, so the infimum over each interval is
    attained at the endpoint nearest the center.

    Raises:
        InvalidSetError: If the set is empty or an interval contains the center

    """
    if not closed_set:
        raise InvalidSetError("closed set must contain at least one interval")
    best = math.inf
    for interval in closed_set:
        if interval.contains(center):
            raise InvalidSetError(
                f"interval [{interval.lower}, {interval.upper}] contains the true value {center!r}"
            )
        endpoint = interval.upper if interval.upper < center else interval.lower
        best = min(best, rate(endpoint))
    return best


def validate_sample_size(n: int) -> int:
    """Check that n is a non-negative integer and return it as int."""
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise OutOfRangeError(f"sample size must be a non-negative integer, got {n!r}")
    return int(n)


def exponential_bound(kind: TailKind, delta: float, n: int, groups: int) -> TailBound:
    """Build the bound 2^groups · exp(-delta n), with 0 · ∞ taken as 0."""
    prefactor = float(2**groups)
    if n == 0:
        bound = prefactor
    elif math.isinf(delta):
        bound = 0.0
    else:
        bound = prefactor * math.exp(-delta * n)
    logger.debug("%s bound: delta=%.6g n=%d M=%d -> %.6g", kind.value, delta, n, groups, bound)
    return TailBound(kind=kind, delta=delta, n=n, groups=groups, bound=bound)


def tail_bound_atypical_t(ctx: RateContext, n: int) -> TailBound:
    """P{T ∉ [N, N²)} ≤ 2 exp(-δ n)."""
    n = validate_sample_size(n)
    return exponential_bound(TailKind.ATYPICAL_T, delta_atypical(ctx), n, 1)


def tail_bound_atypical_beta_hat(model: Sequence[GroupSpec], n: int) -> TailBound:
    """P{β̂ ∉ [0, ∞)^M} ≤ 2^M exp(-δ̄ n)."""
    n = validate_sample_size(n)
    return exponential_bound(TailKind.ATYPICAL_BETA_HAT, delta_bar(model), n, len(model))


def tail_bound_closed_set(
    model: Sequence[GroupSpec], n: int, sets: Sequence[ClosedSet]
) -> TailBound:
    """P{β̂ ∈ K₁×…×K_M} ≤ 2^M exp(-n inf_K 𝐉).

    A factor K_λ that contains β_λ contributes zero to the infimum; at least
    one factor must exclude its true coupling.

    Raises:
        ShapeError: If the number of sets differs from the number of groups
        InvalidSetError: If the product set contains the true coupling vector

    """
    n = validate_sample_size(n)
    if not model or len(sets) != len(model):
        raise ShapeError(f"expected one closed set per group ({len(model)}), got {len(sets)}")
    total = 0.0
    excluded = 0
    for index, (spec, closed_set) in enumerate(zip(model, sets)):
        if any(interval.contains(spec.beta) for interval in closed_set):
            continue
        ctx = make_rate_context(spec.N, spec.beta)
        try:
            total += infimum_over_set(lambda y, c=ctx: rate_j(c, y), spec.beta, closed_set)
        except CwVoteError as error:
            raise error.tag_group(index) from None
        excluded += 1
    if excluded == 0:
        raise InvalidSetError("closed set contains the true coupling vector")
    return exponential_bound(TailKind.CLOSED_SET_K, total, n, len(model))


def tail_bound(
    source: Union[RateContext, Sequence[GroupSpec]],
    n: int,
    kind: TailKind,
    sets: Optional[Sequence[ClosedSet]] = None,
) -> TailBound:
    """Dispatch to the tail bound of the requested kind.

    Args:
        source: A rate context (single group) or a model (list of groups)
        n: Sample size
        kind: Which event to bound
        sets: Per-group closed sets, required for ``CLOSED_SET_K``

    Returns:
        The tail bound

    """
    ctx: Optional[RateContext]
    if isinstance(source, RateContext):
        ctx = source
        model: Sequence[GroupSpec] = []
    else:
        model = list(source)
        ctx = None

    if kind is TailKind.ATYPICAL_T:
        if ctx is None:
            if len(model) != 1:
                raise ShapeError("the atypical-T bound is stated for a single group")
            ctx = make_rate_context(model[0].N, model[0].beta)
        return tail_bound_atypical_t(ctx, n)

    if ctx is not None:
        model = [GroupSpec(N=ctx.N, beta=ctx.beta)]
    if kind is TailKind.ATYPICAL_BETA_HAT:
        return tail_bound_atypical_beta_hat(model, n)
    if kind is TailKind.CLOSED_SET_K:
        if sets is None:
            raise ShapeError("closed-set bounds need one closed set per group")
        return tail_bound_closed_set(model, n, sets)
    raise PreconditionError(f"tail bound kind {kind.value!r} is not handled here")
