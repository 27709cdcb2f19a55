"""Use case for moment curves over a grid of couplings."""

from __future__ import annotations

from typing import TYPE_CHECKING

from cwvote.domain.curie_weiss import abs_moment, moment_s2, var_s2
from cwvote.domain.models import MomentPoint, validate_population

if TYPE_CHECKING:
    from collections.abc import Sequence


class TabulateMomentsUseCase:
    """Tabulate (β, θ_N, 𝕍 S², E|S|) for plotting."""

    def execute(self, sizes: Sequence[int], betas: Sequence[float]) -> list[MomentPoint]:
        """各グループサイズについて結合のグリッド上でモーメントを計算します。"""
        points = []
        for N in sizes:
            N = validate_population(N)
            for beta in betas:
                points.append(
                    MomentPoint(
                        N=N,
                        beta=beta,
                        theta=moment_s2(N, beta),
                        var_s2=var_s2(N, beta),
                        eabs=abs_moment(N, beta, 1),
                    )
                )
        return points
