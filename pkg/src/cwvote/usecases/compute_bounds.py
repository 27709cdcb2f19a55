"""Use case for exponential tail bounds."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from cwvote.domain.errors import ShapeError
from cwvote.domain.large_deviations import make_rate_context, tail_bound
from cwvote.domain.models import TailKind
from cwvote.domain.voting import weight_tail_bound

if TYPE_CHECKING:
    from collections.abc import Sequence

    from cwvote.domain.models import ClosedSet, GroupSpec, TailBound


class ComputeBoundsUseCase:
    """Evaluate one of the tail bounds for a model and sample size."""

    def execute(
        self,
        model: Sequence[GroupSpec],
        n: int,
        kind: TailKind,
        sets: Optional[Sequence[ClosedSet]] = None,
    ) -> TailBound:
        """上界を計算します。

        Args:
            model: グループ仕様のリスト
            n: 標本サイズ
            kind: 上界の種類
            sets: グループごとの閉集合(closed-set / weight-set の場合)

        Returns:
            計算された上界

        Raises:
            ShapeError: 種類に対してグループ数や閉集合の数が合わない場合

        """
        if kind is TailKind.CLOSED_SET_WEIGHT:
            if len(model) != 1 or not sets or len(sets) != 1:
                raise ShapeError("weight-set bounds take exactly one group and one set")
            spec = model[0]
            return weight_tail_bound(make_rate_context(spec.N, spec.beta), n, sets[0])
        return tail_bound(model, n, kind, sets)
