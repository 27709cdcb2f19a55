"""Exact single-group Curie-Weiss quantities.

The Gibbs weight of a configuration depends on it only through the
magnetization S, so every sum over the 2^N configurations collapses to a sum
over the N+1 levels s_k = 2k - N with multiplicity C(N, k). All level sums are
taken in log space, anchored at their largest term.

Note:
    θ_N(β) = E S² saturates quickly: for moderate N it is within a few ulp of
    N² once β exceeds roughly 40, and nothing finer than that is resolvable
    in double precision.

"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Union

import numpy as np
from scipy.special import gammaln, logsumexp

from cwvote.domain.errors import OutOfRangeError, UnsupportedOrderError
from cwvote.domain.models import (
    ExtendedCoupling,
    KappaInfo,
    MagnetizationPmf,
    validate_population,
)
from cwvote.domain.numerics import bisect_increasing

CouplingLike = Union[float, ExtendedCoupling]

LN2 = math.log(2.0)

# C(N, k) stays below the double range up to N = 1029.
EXACT_BINOMIAL_LIMIT = 1000


def _coupling_value(beta: CouplingLike) -> float:
    return beta.value if isinstance(beta, ExtendedCoupling) else float(beta)


def _require_finite(beta: CouplingLike) -> float:
    value = _coupling_value(beta)
    if not math.isfinite(value):
        raise OutOfRangeError(f"coupling must be finite here, got {value!r}")
    return value


def kappa_info(N: int) -> KappaInfo:
    """Minimum of |S| and the number of configurations attaining it.

    Args:
        N: Population size

    Returns:
        κ = N mod 2 together with |Υ| = C(N, (N + κ)/2)

    Raises:
        InvalidPopulationError: If N < 2

    """
    N = validate_population(N)
    kappa = N % 2
    return KappaInfo(kappa=kappa, upsilon_cardinality=math.comb(N, (N + kappa) // 2))


@lru_cache(maxsize=256)
def _levels(N: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    k = np.arange(N + 1)
    support = 2 * k - N
    if N <= EXACT_BINOMIAL_LIMIT:
        log_binom = np.log(np.array([float(math.comb(N, j)) for j in range(N + 1)]))
    else:
        log_binom = gammaln(N + 1) - gammaln(k + 1) - gammaln(N - k + 1)
    squares = (support * support).astype(float)
    for array in (support, log_binom, squares):
        array.setflags(write=False)
    return support, log_binom, squares


def log_magnetization_weights(N: int, beta: float) -> np.ndarray:
    """Unnormalized log-weights ln C(N,k) + β(2k-N)²/(2N) of the N+1 levels."""
    N = validate_population(N)
    _, log_binom, squares = _levels(N)
    return log_binom + _require_finite(beta) * squares / (2.0 * N)


def log_partition(N: int, beta: float) -> float:
    """Natural log of the single-group partition function Z_{β,N}.

    Args:
        N: Population size
        beta: Finite coupling

    Returns:
        ln Σ_k C(N,k) exp(β(2k-N)²/(2N))

    """
    N = validate_population(N)
    if _require_finite(beta) == 0.0:
        return N * LN2
    return float(logsumexp(log_magnetization_weights(N, beta)))


def dlog_partition(N: int, beta: float) -> float:
    """d ln Z / dβ = E S² / (2N)."""
    return moment_s2(N, beta) / (2.0 * validate_population(N))


@lru_cache(maxsize=1024)
def _pmf(N: int, beta: float) -> MagnetizationPmf:
    support, _, _ = _levels(N)
    log_weights = log_magnetization_weights(N, beta)
    log_z = N * LN2 if beta == 0.0 else logsumexp(log_weights)
    log_probs = log_weights - log_z
    probs = np.exp(log_probs)
    for array in (log_probs, probs):
        array.setflags(write=False)
    return MagnetizationPmf(
        N=N, beta=beta, support=support, probs=probs, log_probs=log_probs
    )


def magnetization_pmf(N: int, beta: float) -> MagnetizationPmf:
    """Exact distribution of S over its N+1 achievable values.

    Results are cached per (N, β) and their arrays are read-only.

    Args:
        N: Population size
        beta: Finite coupling

    Returns:
        The magnetization pmf

    """
    return _pmf(validate_population(N), _require_finite(beta))


def _normalized(N: int, beta: float) -> np.ndarray:
    log_weights = log_magnetization_weights(N, beta)
    return np.exp(log_weights - logsumexp(log_weights))


def moment_s2(N: int, beta: CouplingLike) -> float:
    """θ_N(β) = E_{β,N} S², extended by κ at -∞ and N² at +∞.

    Args:
        N: Population size
        beta: Coupling, possibly infinite

    Returns:
        Second moment of S, always in [κ, N²]

    """
    N = validate_population(N)
    value = _coupling_value(beta)
    if value == math.inf:
        return float(N * N)
    if value == -math.inf:
        return float(N % 2)
    if value == 0.0:
        return float(N)
    _, _, squares = _levels(N)
    return float(magnetization_pmf(N, value).probs @ squares)


def var_s2(N: int, beta: float) -> float:
    """𝕍_{β,N} S² = E S⁴ - (E S²)², the derivative of θ_N times 2N."""
    N = validate_population(N)
    value = _require_finite(beta)
    if value == 0.0:
        return float(2 * N * N - 2 * N)
    _, _, squares = _levels(N)
    probs = magnetization_pmf(N, value).probs
    mean = float(probs @ squares)
    return float(probs @ ((squares - mean) ** 2))


def abs_moment(N: int, beta: CouplingLike, order: int = 1) -> float:
    """E|S|^order for order 1 or 3.

    Args:
        N: Population size
        beta: Coupling, possibly infinite
        order: 1 or 3

    Returns:
        The absolute moment; N^order at +∞ and κ^order at -∞

    Raises:
        UnsupportedOrderError: If order is neither 1 nor 3

    """
    if order not in (1, 3):
        raise UnsupportedOrderError(order)
    N = validate_population(N)
    value = _coupling_value(beta)
    if value == math.inf:
        return float(N**order)
    if value == -math.inf:
        return float((N % 2) ** order)
    pmf = magnetization_pmf(N, value)
    return float(pmf.probs @ (np.abs(pmf.support).astype(float) ** order))


def zero_probability(N: int, beta: CouplingLike) -> float:
    """P(S = 0); zero for odd N."""
    N = validate_population(N)
    if N % 2:
        return 0.0
    value = _coupling_value(beta)
    if value == math.inf:
        return 0.0
    if value == -math.inf:
        return 1.0
    return magnetization_pmf(N, value).prob(0)


def theta_inverse(N: int, t: float) -> ExtendedCoupling:
    """Unique extended coupling b with θ_N(b) = t.

    Args:
        N: Population size
        t: Target second moment in [κ, N²]

    Returns:
        -∞ at t = κ, +∞ at t = N², a finite coupling otherwise

    Raises:
        OutOfRangeError: If t lies outside [κ, N²]

    """
    N = validate_population(N)
    kappa = N % 2
    if not kappa <= t <= N * N:
        raise OutOfRangeError(f"second moment {t!r} outside [{kappa}, {N * N}] for N={N}")
    if t == kappa:
        return ExtendedCoupling.neg_infinity()
    if t == N * N:
        return ExtendedCoupling.pos_infinity()
    if t == N:
        return ExtendedCoupling.finite(0.0)
    _, _, squares = _levels(N)
    # Uncached evaluation: bisection midpoints would only churn the pmf cache.
    beta = bisect_increasing(lambda b: float(_normalized(N, b) @ squares), t)
    return ExtendedCoupling.finite(beta)


def abs_moment_inverse(N: int, y: float) -> ExtendedCoupling:
    """Unique extended coupling b with E_{b,N}|S| = y, for y in [κ, N]."""
    N = validate_population(N)
    kappa = N % 2
    if not kappa <= y <= N:
        raise OutOfRangeError(f"absolute moment {y!r} outside [{kappa}, {N}] for N={N}")
    if y == kappa:
        return ExtendedCoupling.neg_infinity()
    if y == N:
        return ExtendedCoupling.pos_infinity()
    support, _, _ = _levels(N)
    magnitudes = np.abs(support).astype(float)
    beta = bisect_increasing(lambda b: float(_normalized(N, b) @ magnitudes), y)
    return ExtendedCoupling.finite(beta)
