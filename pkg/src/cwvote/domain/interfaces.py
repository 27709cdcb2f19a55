"""cwvoteのドメインインターフェース。

このモジュールでは、投票データ・レポート・設定へのアクセスを抽象化する
インターフェースを定義します。Clean Architectureに従い、ユースケースは
これらの抽象にのみ依存し、ファイル形式などの実装詳細には依存しません。
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Optional

from cwvote.domain.models import SampleBatch, SufficientSummary, VoteTable


class IVoteRepository(ABC):
    """投票データリポジトリのインターフェース。

    投票構成のCSVと十分統計量のサマリーを読み書きするリポジトリの抽象定義です。
    """

    @abstractmethod
    def read_votes(self, path: Path) -> VoteTable:
        """投票構成のCSVを読み込みます。

        Args:
            path: CSVファイルのパス

        Returns:
            読み込まれた投票行列とヘッダーのグループサイズ

        Raises:
            MalformedDataError: ±1以外の値が含まれる場合
            FileFormatError: ファイルを読み込めない場合

        """
        pass

    @abstractmethod
    def write_votes(self, path: Path, batch: SampleBatch) -> None:
        """投票構成をCSVとして書き込みます。

        Args:
            path: 出力先のパス
            batch: 投票構成を含む標本

        """
        pass

    @abstractmethod
    def read_summary(self, path: Path) -> tuple[list[tuple[int, float]], int]:
        """十分統計量のサマリーJSONを読み込みます。

        Args:
            path: JSONファイルのパス

        Returns:
            (N, T) の組のリストと標本サイズn

        """
        pass

    @abstractmethod
    def write_summary(
        self, path: Path, summary: SufficientSummary, metadata: dict[str, Any]
    ) -> None:
        """十分統計量のサマリーJSONを書き込みます。

        Args:
            path: 出力先のパス
            summary: 書き込むサマリー
            metadata: バージョンやシードなどの付加情報

        """
        pass


class IReportWriter(ABC):
    """レポート出力のインターフェース。"""

    @abstractmethod
    def write_json(self, path: Path, document: dict[str, Any]) -> None:
        """JSONドキュメントをアトミックに書き込みます。

        Args:
            path: 出力先のパス
            document: 書き込むドキュメント

        """
        pass

    @abstractmethod
    def write_rows(self, path: Path, header: list[str], rows: list[list[Any]]) -> None:
        """表形式のデータをCSVとしてアトミックに書き込みます。

        Args:
            path: 出力先のパス
            header: 列名
            rows: 行データ

        """
        pass


class IConfigManager(ABC):
    """設定管理のインターフェース。

    アプリケーション設定の読み込みと管理を行うマネージャーの抽象定義です。
    """

    @abstractmethod
    def load_config(self, config_path: Optional[Path] = None) -> dict[str, Any]:
        """ファイルまたはデフォルトから設定を読み込みます。

        Args:
            config_path: 設定ファイルのパス(オプション)

        Returns:
            読み込まれた設定

        """
        pass

    @abstractmethod
    def get(self, key: str, default: Any = None) -> Any:
        """設定値を取得します。

        Args:
            key: 設定キー
            default: キーが存在しない場合の値

        Returns:
            設定値

        """
        pass

    @abstractmethod
    def get_tolerance(self, name: str) -> float:
        """``[tolerances]`` テーブルの数値許容誤差を取得します。

        Args:
            name: 許容誤差の名前(例: ``achievability_abs``)

        Returns:
            許容誤差

        """
        pass

    @abstractmethod
    def get_threads(self) -> Optional[int]:
        """並列処理のスレッド数上限を取得します。

        Returns:
            スレッド数、直列実行なら None

        """
        pass

    @abstractmethod
    def get_global_config(self) -> dict[str, Any]:
        """有効な設定全体を取得します。

        Returns:
            グローバル設定

        """
        pass
