"""cwvoteのドメインモデル定義。

このモジュールでは、Curie-Weiss投票モデルの推定・シミュレーション・
重み計算で受け渡されるデータモデルを定義します。Clean Architectureに従い、
外部システムに依存しない純粋な値オブジェクトのみを提供します。
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from cwvote.domain.errors import (
    InvalidPopulationError,
    OutOfRangeError,
    PreconditionError,
    ShapeError,
)


def validate_population(N: int) -> int:
    """母集団サイズを検証して返します。

    Raises:
        InvalidPopulationError: Nが2未満の整数、または整数でない場合

    """
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)) or N < 2:
        raise InvalidPopulationError(N)
    return int(N)


@dataclass(frozen=True, order=True)
class ExtendedCoupling:
    """拡張実数上の結合パラメータ。

    値は有限の実数、または ``-inf`` / ``+inf`` のいずれかです。
    順序は NegInfinity < 任意の有限値 < PosInfinity となり、
    浮動小数点の比較にそのまま一致します。

    Attributes:
        value: 結合の値(±infを許容、NaNは不可)

    """

    value: float

    def __post_init__(self) -> None:
        """オブジェクト作成後の検証を実行します。"""
        if math.isnan(self.value):
            raise OutOfRangeError("extended coupling cannot be NaN")
        object.__setattr__(self, "value", float(self.value))

    @classmethod
    def finite(cls, value: float) -> ExtendedCoupling:
        """有限の結合を作成します。"""
        if not math.isfinite(value):
            raise OutOfRangeError(f"expected a finite coupling, got {value!r}")
        return cls(value)

    @classmethod
    def neg_infinity(cls) -> ExtendedCoupling:
        """-∞ の結合を作成します。"""
        return cls(-math.inf)

    @classmethod
    def pos_infinity(cls) -> ExtendedCoupling:
        """+∞ の結合を作成します。"""
        return cls(math.inf)

    @property
    def is_finite(self) -> bool:
        """有限値かどうか。"""
        return math.isfinite(self.value)

    @property
    def is_neg_infinity(self) -> bool:
        """-∞ かどうか。"""
        return self.value == -math.inf

    @property
    def is_pos_infinity(self) -> bool:
        """+∞ かどうか。"""
        return self.value == math.inf

    def __str__(self) -> str:
        if self.is_pos_infinity:
            return "inf"
        if self.is_neg_infinity:
            return "-inf"
        return repr(self.value)


@dataclass(frozen=True)
class GroupSpec:
    """1つのグループの母集団サイズと結合パラメータ。

    Attributes:
        N: 投票者数(2以上の整数)
        beta: 結合パラメータ(有限の実数)

    """

    N: int
    beta: float

    def __post_init__(self) -> None:
        """オブジェクト作成後の検証を実行します。"""
        object.__setattr__(self, "N", validate_population(self.N))
        if not math.isfinite(self.beta):
            raise OutOfRangeError(
                f"GroupSpec coupling must be finite, got {self.beta!r}"
            )
        object.__setattr__(self, "beta", float(self.beta))


@dataclass(frozen=True)
class KappaInfo:
    """|S| の最小値κと、それを達成する構成の数。

    Attributes:
        kappa: |S| の最小値(Nが偶数なら0、奇数なら1)
        upsilon_cardinality: κを達成する投票構成の数

    """

    kappa: int
    upsilon_cardinality: int


@dataclass(frozen=True, eq=False)
class MagnetizationPmf:
    """1グループの投票マージン S の正確な分布。

    Attributes:
        N: 母集団サイズ
        beta: 結合パラメータ
        support: 取りうる値 s_k = 2k - N (k = 0..N)
        probs: 各値の確率
        log_probs: 各値の対数確率

    """

    N: int
    beta: float
    support: np.ndarray
    probs: np.ndarray
    log_probs: np.ndarray

    def prob(self, s: int) -> float:
        """P(S = s) を返します。達成不可能な値では0を返します。"""
        if abs(s) > self.N or (s + self.N) % 2:
            return 0.0
        return float(self.probs[(s + self.N) // 2])

    def as_dict(self) -> dict[int, float]:
        """{s: P(S = s)} の辞書として返します。"""
        return {int(s): float(p) for s, p in zip(self.support, self.probs)}

    def cumulative(self) -> np.ndarray:
        """累積分布表を返します(最後の要素は厳密に1)。"""
        cdf = np.cumsum(self.probs)
        cdf[-1] = 1.0
        return cdf


@dataclass(frozen=True)
class GroupSummary:
    """1グループ分の十分統計量。

    Attributes:
        N: 母集団サイズ
        T: S² の標本平均
        achievable: n·T が達成可能な S² の和として整合するか

    """

    N: int
    T: float
    achievable: bool = True


@dataclass(frozen=True)
class SufficientSummary:
    """推定に必要な全データ: グループごとの統計量Tと標本サイズn。

    Attributes:
        groups: グループごとの統計量(宣言順)
        n: 観測された投票構成の数

    """

    groups: tuple[GroupSummary, ...]
    n: int

    def __post_init__(self) -> None:
        """オブジェクト作成後の検証を実行します。"""
        object.__setattr__(self, "groups", tuple(self.groups))
        if not self.groups:
            raise ShapeError("summary must contain at least one group")
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise OutOfRangeError(f"sample size must be >= 1, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def sizes(self) -> list[int]:
        """グループサイズのリスト。"""
        return [group.N for group in self.groups]

    @property
    def statistics(self) -> list[float]:
        """統計量Tのリスト。"""
        return [group.T for group in self.groups]


class EstimateClass(Enum):
    """最尤推定値の分類。"""

    NEG_INFINITE = "neg-infinite"
    NEGATIVE_FINITE = "negative-finite"
    NON_NEGATIVE_FINITE = "non-negative-finite"
    POS_INFINITE = "pos-infinite"


@dataclass(frozen=True)
class ConfidenceInterval:
    """Wald型の信頼区間。

    Attributes:
        lower: 下限
        upper: 上限
        level: 信頼水準

    """

    lower: float
    upper: float
    level: float

    def contains(self, value: float) -> bool:
        """値が区間に含まれるかを返します。"""
        return self.lower <= value <= self.upper


@dataclass(frozen=True)
class GroupEstimate:
    """1グループの推定結果。

    Attributes:
        N: 母集団サイズ
        T: 実現した統計量
        beta_hat: 拡張実数の最尤推定値
        classification: 推定値の分類
        std_error: 標準誤差(有限推定値の場合のみ)
        ci: 信頼区間(有限推定値の場合のみ)

    """

    N: int
    T: float
    beta_hat: ExtendedCoupling
    classification: EstimateClass
    std_error: Optional[float] = None
    ci: Optional[ConfidenceInterval] = None


@dataclass(frozen=True)
class EstimateReport:
    """全グループの推定結果。

    Attributes:
        groups: グループごとの推定結果(入力順)
        n: 標本サイズ
        level: 信頼水準

    """

    groups: tuple[GroupEstimate, ...]
    n: int
    level: float


@dataclass(frozen=True)
class RateContext:
    """真の結合におけるレート関数の評価文脈。

    Attributes:
        N: 母集団サイズ
        beta: 真の結合パラメータ
        pmf: (N, beta) における S の分布

    """

    N: int
    beta: float
    pmf: MagnetizationPmf = field(repr=False)

    def __post_init__(self) -> None:
        """pmfが(N, beta)と整合しているかを検証します。"""
        if self.pmf.N != self.N or self.pmf.beta != self.beta:
            raise PreconditionError(
                f"pmf computed at (N={self.pmf.N}, beta={self.pmf.beta}) "
                f"does not match context (N={self.N}, beta={self.beta})"
            )


class TailKind(Enum):
    """指数的裾確率上界の種類。"""

    ATYPICAL_T = "atypical-T"
    ATYPICAL_BETA_HAT = "atypical-beta-hat"
    CLOSED_SET_K = "closed-set"
    CLOSED_SET_WEIGHT = "weight-set"


@dataclass(frozen=True)
class ClosedInterval:
    """拡張実数上の閉区間 [lower, upper]。"""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        """端点の順序を検証します。"""
        if math.isnan(self.lower) or math.isnan(self.upper) or self.lower > self.upper:
            raise OutOfRangeError(
                f"invalid closed interval [{self.lower}, {self.upper}]"
            )

    def contains(self, value: float) -> bool:
        """値が区間に含まれるかを返します。"""
        return self.lower <= value <= self.upper


ClosedSet = tuple[ClosedInterval, ...]


@dataclass(frozen=True)
class TailBound:
    """P{事象} ≤ 2^M exp(-δ n) 形式の上界。

    Attributes:
        kind: 上界の種類
        delta: レート定数
        n: 標本サイズ
        groups: 前因子 2^M の M
        bound: 上界の値

    """

    kind: TailKind
    delta: float
    n: int
    groups: int
    bound: float

    @property
    def prefactor(self) -> float:
        """前因子 2^M。"""
        return float(2**self.groups)


@dataclass(frozen=True, eq=False)
class SampleBatch:
    """シミュレーションで生成された標本。

    Attributes:
        model: 生成に使ったグループ仕様
        n: 標本数
        seed: 再現用シード
        magnetizations: n × M の投票マージン
        configurations: n × ΣN の ±1 投票行列(省略可)

    """

    model: tuple[GroupSpec, ...]
    n: int
    seed: int
    magnetizations: np.ndarray
    configurations: Optional[np.ndarray] = None

    @property
    def sizes(self) -> list[int]:
        """グループサイズのリスト。"""
        return [spec.N for spec in self.model]


class WeightSource(Enum):
    """評議会重みの出所。"""

    EXACT = "exact"
    ESTIMATED = "estimated"


@dataclass(frozen=True)
class GroupWeight:
    """1グループの評議会重み。

    Attributes:
        N: 母集団サイズ
        coupling: 重みの計算に使った結合(真値または推定値)
        w: 評議会重み E|S|
        source: 真値由来か推定値由来か
        upsilon_sq: デルタ法による漸近分散υ²(有限推定値の場合のみ)
        std_error: sqrt(υ²/n)(推定値の場合のみ)
        ci: 重みの信頼区間(推定値の場合のみ)

    """

    N: int
    coupling: ExtendedCoupling
    w: float
    source: WeightSource
    upsilon_sq: Optional[float] = None
    std_error: Optional[float] = None
    ci: Optional[ConfidenceInterval] = None


@dataclass(frozen=True)
class WeightReport:
    """全グループの重みと、その重みでの民主主義の赤字。

    Attributes:
        groups: グループごとの重み
        deficit: 民主主義の赤字 E[S̄ - Σ w χ]²

    """

    groups: tuple[GroupWeight, ...]
    deficit: float

    @property
    def weights(self) -> list[float]:
        """重みのリスト。"""
        return [group.w for group in self.groups]


@dataclass(frozen=True)
class OracleMoments:
    """全列挙による厳密なモーメント。

    Attributes:
        N: 母集団サイズ
        beta: 結合パラメータ
        log_z: 分配関数の自然対数
        es2: E S²
        es4: E S⁴
        eabs: E|S|
        eabs3: E|S|³

    """

    N: int
    beta: float
    log_z: float
    es2: float
    es4: float
    eabs: float
    eabs3: float


@dataclass(frozen=True, eq=False)
class VoteTable:
    """ファイルから読み込んだ ±1 投票行列。

    Attributes:
        votes: n × ΣN の投票行列
        sizes: ヘッダー ``# sizes=...`` に記載されたグループサイズ(なければNone)

    """

    votes: np.ndarray
    sizes: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class MomentPoint:
    """プロット用のモーメント曲線の1点。

    Attributes:
        N: 母集団サイズ
        beta: 結合パラメータ
        theta: θ_N(β) = E S²
        var_s2: 𝕍 S²
        eabs: E|S|

    """

    N: int
    beta: float
    theta: float
    var_s2: float
    eabs: float
