"""File repository implementation."""

import csv
import json
import logging
import os
import re
import tempfile
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import IO, Any, Optional

import numpy as np

from cwvote.domain.errors import MalformedDataError, ShapeError
from cwvote.domain.interfaces import IReportWriter, IVoteRepository
from cwvote.domain.models import SampleBatch, SufficientSummary, VoteTable
from cwvote.infrastructure.errors import FileFormatError

logger = logging.getLogger(__name__)

SIZES_HEADER = re.compile(r"^#\s*sizes\s*=\s*(?P<sizes>[0-9,\s]+)$")
VOTE_TOKENS = {"1": 1, "-1": -1}


@contextmanager
def atomic_writer(path: Path, mode: str = "w") -> Iterator[IO[Any]]:
    """Write to a temporary file next to ``path`` and rename it into place."""
    path.parent.mkdir(parents=True, exist_ok=True)
    handle = tempfile.NamedTemporaryFile(
        mode=mode,
        dir=path.parent,
        prefix=f".{path.name}.",
        suffix=".tmp",
        delete=False,
        **({"encoding": "utf-8", "newline": ""} if "b" not in mode else {}),
    )
    temp_path = Path(handle.name)
    try:
        with handle:
            yield handle
            handle.flush()
            os.fsync(handle.fileno())
        temp_path.replace(path)
    except BaseException:
        temp_path.unlink(missing_ok=True)
        raise


class FileRepository(IVoteRepository, IReportWriter):
    """Repository for vote CSVs, summary JSONs and report files."""

    def read_votes(self, path: Path) -> VoteTable:
        """投票構成のCSVを読み込みます。

        空行と ``#`` で始まる行は読み飛ばします。``# sizes=5,7`` 形式の
        ヘッダーがあればグループサイズとして返します。値は厳密に ``-1`` か
        ``1`` でなければなりません(0/1表記は受け付けません)。

        Args:
            path: CSVファイルのパス

        Returns:
            投票行列とヘッダーのグループサイズ

        Raises:
            FileFormatError: ファイルを読み込めない場合
            MalformedDataError: ±1以外の値がある場合(データ行・物理行・列は1始まり)
            ShapeError: 行の長さが揃っていない、またはデータ行がない場合

        """
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise FileFormatError(path, e) from e

        sizes: Optional[tuple[int, ...]] = None
        rows: list[list[int]] = []
        data_lines: list[tuple[int, str]] = []
        for line_number, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                match = SIZES_HEADER.match(stripped)
                if match and sizes is None:
                    try:
                        sizes = tuple(
                            int(part) for part in match.group("sizes").split(",") if part.strip()
                        )
                    except ValueError as e:
                        raise FileFormatError(path, e) from e
                continue
            data_lines.append((line_number, stripped))

        width: Optional[int] = None
        for row_number, (line_number, data_line) in enumerate(data_lines, start=1):
            fields = next(csv.reader([data_line]))
            if width is None:
                width = len(fields)
            elif len(fields) != width:
                raise ShapeError(
                    f"row {row_number} (line {line_number}) has {len(fields)} entries,"
                    f" expected {width}"
                )
            row = []
            for column_number, field in enumerate(fields, start=1):
                vote = VOTE_TOKENS.get(field.strip())
                if vote is None:
                    raise MalformedDataError(
                        row_number, column_number, field.strip(), line=line_number
                    )
                row.append(vote)
            rows.append(row)

        if not rows:
            raise ShapeError(f"{path} contains no vote rows")
        logger.debug("read %d rows of width %s from %s", len(rows), width, path)
        return VoteTable(votes=np.asarray(rows, dtype=np.int8), sizes=sizes)

    def write_votes(self, path: Path, batch: SampleBatch) -> None:
        """投票構成をCSVとして書き込みます。

        Raises:
            ShapeError: 標本に投票構成が含まれていない場合

        """
        if batch.configurations is None:
            raise ShapeError("sample batch carries no configurations to write")
        header = "sizes=" + ",".join(str(N) for N in batch.sizes)
        with atomic_writer(path) as handle:
            np.savetxt(
                handle,
                batch.configurations,
                fmt="%d",
                delimiter=",",
                header=header,
                comments="# ",
            )

    def read_summary(self, path: Path) -> tuple[list[tuple[int, float]], int]:
        """十分統計量のサマリーJSONを読み込みます。

        ``{"n": int, "groups": [{"N": int, "T": float}, ...]}`` 以外のキーは無視します。

        Raises:
            FileFormatError: JSONとして読めない、または必須キーが欠けている場合

        """
        document = self.read_json(path)
        try:
            n = document["n"]
            groups = [(entry["N"], entry["T"]) for entry in document["groups"]]
        except (KeyError, TypeError) as e:
            raise FileFormatError(path, f"missing summary field {e}") from e
        if isinstance(n, bool) or not isinstance(n, int):
            raise FileFormatError(path, f"'n' must be an integer, got {n!r}")
        for N, T in groups:
            if isinstance(N, bool) or not isinstance(N, int):
                raise FileFormatError(path, f"'N' must be an integer, got {N!r}")
            if isinstance(T, bool) or not isinstance(T, (int, float)):
                raise FileFormatError(path, f"'T' must be a number, got {T!r}")
        return [(N, float(T)) for N, T in groups], n

    def write_summary(
        self, path: Path, summary: SufficientSummary, metadata: dict[str, Any]
    ) -> None:
        """十分統計量のサマリーJSONを書き込みます。"""
        document = {
            **metadata,
            "n": summary.n,
            "groups": [
                {"N": group.N, "T": group.T, "achievable": group.achievable}
                for group in summary.groups
            ],
        }
        self.write_json(path, document)

    def read_json(self, path: Path) -> dict[str, Any]:
        """JSONドキュメントを読み込みます。

        Raises:
            FileFormatError: 読み込めない、またはトップレベルがオブジェクトでない場合

        """
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
            raise FileFormatError(path, e) from e
        if not isinstance(document, dict):
            raise FileFormatError(path, "top-level JSON value must be an object")
        return document

    def write_json(self, path: Path, document: dict[str, Any]) -> None:
        """JSONドキュメントをアトミックに書き込みます。"""
        text = json.dumps(document, indent=2, allow_nan=False)
        with atomic_writer(path) as handle:
            handle.write(text + "\n")
        logger.debug("wrote %s", path)

    def write_rows(self, path: Path, header: list[str], rows: list[list[Any]]) -> None:
        """表形式のデータをCSVとしてアトミックに書き込みます。"""
        with atomic_writer(path) as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
        logger.debug("wrote %d rows to %s", len(rows), path)
