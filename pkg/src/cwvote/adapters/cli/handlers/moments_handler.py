"""Moments command handler."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from cwvote.adapters.cli.handlers.base_handler import BaseCommandHandler
from cwvote.adapters.cli.services.output_service import MOMENT_COLUMNS, OutputService
from cwvote.usecases.tabulate_moments import TabulateMomentsUseCase

if TYPE_CHECKING:
    from pathlib import Path

    from cwvote.domain.models import MomentPoint


class MomentsCommandHandler(BaseCommandHandler):
    """Handler for the moments command."""

    def execute(self, sizes: list[int], betas: list[float], out: Optional[Path]) -> list[MomentPoint]:
        """Execute the moments command.

        The file format follows the extension of ``out`` (.csv or .json) and
        falls back to the configured ``format``.
        """
        points = TabulateMomentsUseCase().execute(sizes, betas)
        if out is None:
            self.presenter.present_moments(points)
            return points

        suffix = out.suffix.lower().lstrip(".")
        file_format = suffix if suffix in ("csv", "json") else self.config_manager.get("format")
        if file_format == "csv":
            self.repository.write_rows(out, MOMENT_COLUMNS, OutputService.moment_rows(points))
            self.presenter.present_written(out)
        else:
            self.write_document(out, "moments", OutputService.moments_body(points))
        return points
