"""Maximum likelihood estimation of Curie-Weiss couplings.

The likelihood of n observed configurations depends on the data only through
the per-group statistic T (the sample mean of S²), and the estimator solves
θ_N(β̂) = T group by group.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING, Optional

import numpy as np

from cwvote.domain.curie_weiss import (
    log_partition,
    theta_inverse,
    var_s2,
)
from cwvote.domain.errors import (
    CwVoteError,
    MalformedDataError,
    OutOfRangeError,
    ShapeError,
)
from cwvote.domain.models import (
    ConfidenceInterval,
    EstimateClass,
    EstimateReport,
    GroupEstimate,
    GroupSummary,
    SufficientSummary,
    validate_population,
)
from cwvote.domain.numerics import normal_two_sided_tail, two_sided_z

if TYPE_CHECKING:
    from collections.abc import Sequence

    from cwvote.domain.models import GroupSpec

logger = logging.getLogger(__name__)

ACHIEVABILITY_TOL = 1e-9


def is_achievable(N: int, T: float, n: int, tol: float = ACHIEVABILITY_TOL) -> bool:
    """Check that n·T can be a sum of n achievable values of S².

    Only necessary conditions are checked: n·T is an integer (within a
    relative tolerance), lies in [n·κ, n·N²], and has the residue every sum of
    n squares of the right parity has (0 mod 4 for even N, n mod 8 for odd N).
    For n = 1 the value must itself be the square of an achievable margin.
    """
    total = n * T
    rounded = round(total)
    if abs(total - rounded) > tol * max(1.0, abs(total)):
        return False
    if not n * (N % 2) <= rounded <= n * N * N:
        return False
    if N % 2 == 0 and rounded % 4 != 0:
        return False
    if N % 2 == 1 and (rounded - n) % 8 != 0:
        return False
    if n == 1:
        root = math.isqrt(rounded)
        return root * root == rounded and (root - N) % 2 == 0
    return True


def _snap_window(total: float, gap: int, tol: float) -> float:
    """Half-width in units of n·T within which a sum is taken to be ``total``."""
    return min(tol * max(1.0, total), 0.5 * gap)


def _clean_statistic(N: int, T: float, n: int, tol: float) -> float:
    kappa = N % 2
    upper = float(N * N)
    if not math.isfinite(T) or T < kappa - tol or T > upper * (1.0 + tol):
        raise OutOfRangeError(f"statistic T={T!r} outside [{kappa}, {N * N}] for N={N}")
    if T <= kappa:
        return float(kappa)
    if T >= upper:
        return upper
    # n·T moves in steps of 4N - 4 below n·N² and of 4 (even N) or 8 (odd N)
    # above n·κ, so no attainable interior value lies within half a step.
    if n * (T - kappa) <= _snap_window(float(n), 8 if kappa else 4, tol):
        return float(kappa)
    if n * (upper - T) <= _snap_window(n * upper, 4 * N - 4, tol):
        return upper
    return float(T)


def summarize(
    groups: Sequence[tuple[int, float]], n: int, tol: float = ACHIEVABILITY_TOL
) -> SufficientSummary:
    """Build a validated summary from (N, T) pairs, e.g. read from a file.

    Values whose n·T lies within ``tol`` (relative to n, or to n·N² at the
    top) of n·κ or n·N² are
    snapped onto the boundary so that decimal rounding in stored summaries
    does not hide an infinite estimate. The window never reaches half the
    gap to the nearest attainable interior value.

    Raises:
        ShapeError: If no groups are given
        OutOfRangeError: If a T lies outside [κ, N²]

    """
    if not groups:
        raise ShapeError("summary must contain at least one group")
    entries = []
    for index, (size, statistic) in enumerate(groups):
        try:
            N = validate_population(size)
            T = _clean_statistic(N, float(statistic), n, tol)
        except CwVoteError as error:
            raise error.tag_group(index) from None
        entries.append(GroupSummary(N=N, T=T, achievable=is_achievable(N, T, n, tol)))
    return SufficientSummary(groups=tuple(entries), n=n)


def statistic_T(observations: np.ndarray, sizes: Sequence[int]) -> SufficientSummary:
    """Compute the sufficient statistic from raw ±1 votes.

    Args:
        observations: n × (N₁+…+N_M) matrix of votes, group blocks in order
        sizes: Group sizes N_λ

    Returns:
        Summary with T_λ = (1/n) Σ_t (Σ_i x_{λi}^{(t)})²

    Raises:
        ShapeError: If the matrix is not 2-D, is empty, or its width is not ΣN_λ
        MalformedDataError: On the first entry that is not exactly ±1
            (row and column are 1-based)

    """
    if len(sizes) == 0:
        raise ShapeError("at least one group size is required")
    sizes = [validate_population(N) for N in sizes]
    votes = np.asarray(observations)
    if votes.ndim != 2 or votes.shape[0] < 1:
        raise ShapeError(f"expected a non-empty n × {sum(sizes)} matrix, got shape {votes.shape}")
    if votes.shape[1] != sum(sizes):
        raise ShapeError(
            f"expected {sum(sizes)} columns for sizes {sizes}, got {votes.shape[1]}"
        )
    valid = (votes == 1) | (votes == -1)
    if not valid.all():
        row, column = np.argwhere(~valid)[0]
        raise MalformedDataError(int(row) + 1, int(column) + 1, votes[row, column].item())

    n = votes.shape[0]
    bounds = np.cumsum([0, *sizes])
    margins = np.add.reduceat(votes.astype(np.int64), bounds[:-1], axis=1)
    square_sums = (margins * margins).sum(axis=0)
    groups = tuple(
        GroupSummary(N=N, T=int(total) / n, achievable=True)
        for N, total in zip(sizes, square_sums)
    )
    return SufficientSummary(groups=groups, n=n)


def log_likelihood(model: Sequence[GroupSpec], summary: SufficientSummary) -> float:
    """Log-likelihood of the model given the sufficient statistic.

    Returns:
        -n Σ_λ ln Z_{β_λ,N_λ} + (n/2) Σ_λ (β_λ/N_λ) T_λ

    Raises:
        ShapeError: If group counts or sizes differ

    """
    if [spec.N for spec in model] != summary.sizes:
        raise ShapeError(
            f"model sizes {[spec.N for spec in model]} do not match summary sizes {summary.sizes}"
        )
    n = summary.n
    value = 0.0
    for spec, group in zip(model, summary.groups):
        value += -n * log_partition(spec.N, spec.beta) + 0.5 * n * spec.beta / spec.N * group.T
    return value


def asymptotic_variance(N: int, beta: float) -> float:
    """Σ_λλ = 4N² / 𝕍_{β,N} S², the variance of √n(β̂ - β) in the limit."""
    N = validate_population(N)
    variance = var_s2(N, beta)
    return math.inf if variance <= 0.0 else 4.0 * N * N / variance


def standard_error_T(N: int, beta: float, n: int) -> float:
    """Limiting standard error of T: sqrt(𝕍 S² / n)."""
    if n < 1:
        raise OutOfRangeError(f"sample size must be >= 1, got {n!r}")
    return math.sqrt(var_s2(N, beta) / n)


def deviation_probability(N: int, beta: float, eps: float) -> float:
    """Limit of P{|β̂ - β| ≥ ε/√n} as n → ∞, i.e. N(0, Σ)((-ε, ε)ᶜ)."""
    if eps < 0:
        raise OutOfRangeError(f"eps must be non-negative, got {eps!r}")
    return normal_two_sided_tail(eps / math.sqrt(asymptotic_variance(N, beta)))


def classify(N: int, T: float) -> EstimateClass:
    """Edge classification of the estimate implied by T."""
    if T <= N % 2:
        return EstimateClass.NEG_INFINITE
    if T < N:
        return EstimateClass.NEGATIVE_FINITE
    if T < N * N:
        return EstimateClass.NON_NEGATIVE_FINITE
    return EstimateClass.POS_INFINITE


def mle_estimate(
    N: int, T: float, n: int, level: float = 0.95, tol: float = ACHIEVABILITY_TOL
) -> GroupEstimate:
    """Maximum likelihood estimate for one group.

    Args:
        N: Population size
        T: Realized statistic in [κ, N²]
        n: Sample size
        level: Confidence level in (0, 1)
        tol: Boundary snapping tolerance for T

    Returns:
        Estimate with classification, and standard error and Wald interval
        for finite estimates

    Raises:
        OutOfRangeError: If T or level is out of range

    """
    N = validate_population(N)
    z = two_sided_z(level)
    if n < 1:
        raise OutOfRangeError(f"sample size must be >= 1, got {n!r}")
    T = _clean_statistic(N, T, n, tol)
    beta_hat = theta_inverse(N, T)
    classification = classify(N, T)
    if not beta_hat.is_finite:
        return GroupEstimate(N=N, T=T, beta_hat=beta_hat, classification=classification)

    std_error = math.sqrt(asymptotic_variance(N, beta_hat.value) / n)
    half_width = z * std_error
    ci = ConfidenceInterval(
        lower=beta_hat.value - half_width, upper=beta_hat.value + half_width, level=level
    )
    return GroupEstimate(
        N=N,
        T=T,
        beta_hat=beta_hat,
        classification=classification,
        std_error=std_error,
        ci=ci,
    )


def multi_group_estimate(
    summary: SufficientSummary,
    level: float = 0.95,
    max_workers: Optional[int] = None,
    tol: float = ACHIEVABILITY_TOL,
) -> EstimateReport:
    """Estimate every group independently, preserving input order.

    Args:
        summary: Validated sufficient summary
        level: Confidence level in (0, 1)
        max_workers: Thread cap for group-wise estimation (None or 1: serial)
        tol: Boundary snapping tolerance for T

    Returns:
        Report with one entry per group

    Raises:
        CwVoteError: Any per-group error, tagged with the group's index

    """

    def estimate(indexed: tuple[int, GroupSummary]) -> GroupEstimate:
        index, group = indexed
        try:
            return mle_estimate(group.N, group.T, summary.n, level, tol)
        except CwVoteError as error:
            raise error.tag_group(index) from None

    indexed_groups = list(enumerate(summary.groups))
    if max_workers is not None and max_workers > 1 and len(indexed_groups) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            estimates = list(executor.map(estimate, indexed_groups))
    else:
        estimates = [estimate(item) for item in indexed_groups]

    for index, group in enumerate(estimates):
        logger.debug("group %d: N=%d T=%.6g beta_hat=%s", index, group.N, group.T, group.beta_hat)
    return EstimateReport(groups=tuple(estimates), n=summary.n, level=level)
