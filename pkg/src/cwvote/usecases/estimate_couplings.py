"""Use case for estimating couplings from votes or summaries."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Optional

from cwvote.domain.errors import ShapeError
from cwvote.domain.estimator import multi_group_estimate, statistic_T, summarize

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from cwvote.domain.interfaces import IConfigManager, IVoteRepository
    from cwvote.domain.models import EstimateReport, SufficientSummary

logger = logging.getLogger(__name__)


class EstimateCouplingsUseCase:
    """Maximum likelihood estimation of every group's coupling."""

    def __init__(self, repository: IVoteRepository, config_manager: IConfigManager) -> None:
        """推定ユースケースを初期化します。

        Args:
            repository: 投票データリポジトリ
            config_manager: 設定管理インターフェース

        """
        self._repository = repository
        self._config_manager = config_manager

    def load_summary(
        self,
        votes_path: Optional[Path] = None,
        summary_path: Optional[Path] = None,
        sizes: Optional[Sequence[int]] = None,
    ) -> SufficientSummary:
        """投票CSVまたはサマリーJSONから十分統計量を得ます。

        Args:
            votes_path: 投票CSVのパス
            summary_path: サマリーJSONのパス
            sizes: グループサイズ(CSVのヘッダーより優先せず、一致を検査します)

        Returns:
            検証済みの十分統計量

        Raises:
            ShapeError: 入力が指定されていない、またはグループサイズが決まらない場合

        """
        tol = self._config_manager.get_tolerance("achievability_abs")
        if summary_path is not None:
            groups, n = self._repository.read_summary(summary_path)
            return summarize(groups, n, tol)
        if votes_path is None:
            raise ShapeError("either a vote file or a summary file is required")

        table = self._repository.read_votes(votes_path)
        if sizes and table.sizes and tuple(sizes) != table.sizes:
            raise ShapeError(
                f"sizes {list(sizes)} do not match the file header sizes {list(table.sizes)}"
            )
        resolved = list(sizes) if sizes else list(table.sizes or ())
        if not resolved:
            raise ShapeError("group sizes are required: pass them or add a '# sizes=' header")
        return statistic_T(table.votes, resolved)

    def execute(self, summary: SufficientSummary, level: float) -> EstimateReport:
        """推定を実行します。

        Args:
            summary: 十分統計量
            level: 信頼水準

        Returns:
            グループごとの推定結果

        """
        tol = self._config_manager.get_tolerance("achievability_abs")
        for index, group in enumerate(summary.groups):
            if not group.achievable:
                logger.warning(
                    "group %d: T=%r is not attainable with n=%d observations of N=%d",
                    index,
                    group.T,
                    summary.n,
                    group.N,
                )
        return multi_group_estimate(
            summary,
            level=level,
            max_workers=self._config_manager.get_threads(),
            tol=tol,
        )
