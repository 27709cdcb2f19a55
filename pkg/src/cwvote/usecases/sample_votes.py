"""Use case for drawing voting configurations."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any, Optional

from cwvote.domain.estimator import statistic_T
from cwvote.domain.sampler import sample_configurations

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from cwvote.domain.interfaces import IConfigManager, IVoteRepository
    from cwvote.domain.models import GroupSpec, SampleBatch, SufficientSummary

logger = logging.getLogger(__name__)


class SampleVotesUseCase:
    """Draw n configurations of a model and store votes and their summary."""

    def __init__(self, repository: IVoteRepository, config_manager: IConfigManager) -> None:
        """サンプリングユースケースを初期化します。

        Args:
            repository: 投票データリポジトリ
            config_manager: 設定管理インターフェース

        """
        self._repository = repository
        self._config_manager = config_manager

    def execute(
        self,
        model: Sequence[GroupSpec],
        n: int,
        seed: int,
        out: Optional[Path] = None,
        summary_out: Optional[Path] = None,
        metadata: Optional[dict[str, Any]] = None,
    ) -> tuple[SampleBatch, SufficientSummary]:
        """サンプリングを実行します。

        Args:
            model: グループ仕様のリスト
            n: 観測数
            seed: 乱数シード
            out: 投票CSVの出力先(Noneなら書き込まない)
            summary_out: サマリーJSONの出力先(Noneなら書き込まない)
            metadata: サマリーJSONに付加する情報

        Returns:
            生成した標本と、その十分統計量

        """
        batch = sample_configurations(
            model,
            n,
            seed,
            max_workers=self._config_manager.get_threads(),
        )
        assert batch.configurations is not None
        summary = statistic_T(batch.configurations, batch.sizes)
        logger.info("sampled %d configurations for sizes %s", n, batch.sizes)

        if out is not None:
            self._repository.write_votes(out, batch)
        if summary_out is not None:
            self._repository.write_summary(summary_out, summary, metadata or {})
        return batch, summary
