"""Brute-force reference values by enumerating every sign vector.

Nothing here aggregates by magnetization; each of the 2^N configurations is
weighted on its own. Used only to check the level-sum implementation.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
from scipy.special import logsumexp

from cwvote.domain.errors import OracleCapError, ShapeError
from cwvote.domain.models import OracleMoments, validate_population

if TYPE_CHECKING:
    from collections.abc import Sequence

    from cwvote.domain.models import GroupSpec

ORACLE_MAX_N = 16


def _check_cap(total: int) -> None:
    if total > ORACLE_MAX_N:
        raise OracleCapError(
            f"enumeration over 2^{total} configurations exceeds the cap of 2^{ORACLE_MAX_N}"
        )


def all_configurations(N: int) -> np.ndarray:
    """All 2^N vectors in {-1, +1}^N as rows, in binary counting order."""
    codes = np.arange(2**N)[:, None] >> np.arange(N)
    return (2 * (codes & 1) - 1).astype(np.int64)


def brute_force_moments(N: int, beta: float) -> OracleMoments:
    """ln Z and the moments of S by summing over all 2^N configurations.

    Raises:
        OracleCapError: If N exceeds 16

    """
    N = validate_population(N)
    _check_cap(N)
    margins = all_configurations(N).sum(axis=1).astype(float)
    energies = float(beta) * margins * margins / (2.0 * N)
    log_z = float(logsumexp(energies))
    probs = np.exp(energies - log_z)
    magnitudes = np.abs(margins)
    return OracleMoments(
        N=N,
        beta=float(beta),
        log_z=log_z,
        es2=float(probs @ margins**2),
        es4=float(probs @ margins**4),
        eabs=float(probs @ magnitudes),
        eabs3=float(probs @ magnitudes**3),
    )


def brute_force_deficit(model: Sequence[GroupSpec], weights: Sequence[float]) -> float:
    """E[S̄ - Σ w_λ χ_λ]² by enumerating the joint configurations of all groups.

    Raises:
        ShapeError: If the weight count differs from the group count
        OracleCapError: If ΣN exceeds 16

    """
    if not model or len(weights) != len(model):
        raise ShapeError(f"expected {len(model)} weights, got {len(weights)}")
    sizes = [spec.N for spec in model]
    _check_cap(sum(sizes))
    votes = all_configurations(sum(sizes))
    bounds = np.cumsum([0, *sizes])
    margins = np.add.reduceat(votes, bounds[:-1], axis=1).astype(float)

    energies = np.zeros(len(votes))
    for column, spec in enumerate(model):
        energies += spec.beta * margins[:, column] ** 2 / (2.0 * spec.N)
    probs = np.exp(energies - logsumexp(energies))

    council = np.where(margins > 0, 1.0, -1.0) @ np.asarray(weights, dtype=float)
    gap = margins.sum(axis=1) - council
    return float(probs @ (gap * gap))
