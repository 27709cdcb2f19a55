"""Use case comparing level sums with full enumeration."""

from __future__ import annotations

from typing import TYPE_CHECKING

from cwvote.domain.curie_weiss import abs_moment, log_partition, magnetization_pmf, moment_s2
from cwvote.domain.models import OracleMoments
from cwvote.domain.oracle import brute_force_moments

if TYPE_CHECKING:
    from collections.abc import Sequence

    from cwvote.domain.models import GroupSpec


def level_moments(N: int, beta: float) -> OracleMoments:
    """The oracle's quantities computed from the N+1 magnetization levels."""
    pmf = magnetization_pmf(N, beta)
    return OracleMoments(
        N=N,
        beta=beta,
        log_z=log_partition(N, beta),
        es2=moment_s2(N, beta),
        es4=float(pmf.probs @ pmf.support.astype(float) ** 4),
        eabs=abs_moment(N, beta, 1),
        eabs3=abs_moment(N, beta, 3),
    )


class CompareOracleUseCase:
    """Pair brute-force and level-sum moments for each group."""

    def execute(self, model: Sequence[GroupSpec]) -> list[tuple[OracleMoments, OracleMoments]]:
        """グループごとに(全列挙, レベル和)の組を返します。"""
        return [
            (brute_force_moments(spec.N, spec.beta), level_moments(spec.N, spec.beta))
            for spec in model
        ]
