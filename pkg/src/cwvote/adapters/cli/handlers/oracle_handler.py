"""Oracle command handler."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from cwvote.adapters.cli.handlers.base_handler import BaseCommandHandler
from cwvote.adapters.cli.services.output_service import OutputService
from cwvote.usecases.compare_oracle import CompareOracleUseCase

if TYPE_CHECKING:
    from pathlib import Path

    from cwvote.domain.models import GroupSpec


class OracleCommandHandler(BaseCommandHandler):
    """Handler for the oracle command."""

    def execute(self, model: list[GroupSpec], out: Optional[Path]) -> None:
        """Execute the oracle command."""
        pairs = CompareOracleUseCase().execute(model)
        if out is None:
            self.presenter.present_oracle(pairs)
        else:
            self.write_document(out, "oracle", OutputService.oracle_body(pairs))
