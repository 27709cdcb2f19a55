"""Estimate command handler."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from cwvote.adapters.cli.handlers.base_handler import BaseCommandHandler
from cwvote.adapters.cli.services.output_service import OutputService
from cwvote.usecases.estimate_couplings import EstimateCouplingsUseCase

if TYPE_CHECKING:
    from pathlib import Path

    from cwvote.domain.models import EstimateReport


class EstimateCommandHandler(BaseCommandHandler):
    """Handler for the estimate command."""

    def execute(
        self,
        input_path: Optional[Path],
        summary_path: Optional[Path],
        sizes: list[int],
        out: Optional[Path],
    ) -> EstimateReport:
        """Execute the estimate command.

        The seed recorded in a summary sidecar is carried into the report.
        """
        use_case = EstimateCouplingsUseCase(self.repository, self.config_manager)
        summary = use_case.load_summary(
            votes_path=input_path, summary_path=summary_path, sizes=sizes or None
        )
        report = use_case.execute(summary, level=self.config_manager.get("level"))

        seed = None
        if summary_path is not None:
            recorded = self.repository.read_json(summary_path).get("seed")
            seed = recorded if isinstance(recorded, int) else None

        if out is None:
            self.presenter.present_estimate(report)
        else:
            self.write_document(out, "estimate", OutputService.estimate_body(report), seed)
        return report
