"""Use case for council weights."""

from __future__ import annotations

from typing import TYPE_CHECKING

from cwvote.domain.voting import optimal_weights, plug_in_weights

if TYPE_CHECKING:
    from collections.abc import Sequence

    from cwvote.domain.models import EstimateReport, GroupSpec, WeightReport


class ComputeWeightsUseCase:
    """Exact weights from true couplings or plug-in weights from estimates."""

    def execute_exact(self, model: Sequence[GroupSpec]) -> WeightReport:
        """真の結合から最適な重みを計算します。"""
        return optimal_weights(model)

    def execute_plug_in(self, report: EstimateReport, level: float) -> WeightReport:
        """推定結果からプラグイン重みを計算します。"""
        return plug_in_weights(report, level)
