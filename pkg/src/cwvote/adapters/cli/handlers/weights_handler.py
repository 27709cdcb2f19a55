"""Weights command handler."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from cwvote.adapters.cli.handlers.base_handler import BaseCommandHandler
from cwvote.adapters.cli.services.output_service import OutputService
from cwvote.usecases.compute_weights import ComputeWeightsUseCase

if TYPE_CHECKING:
    from pathlib import Path

    from cwvote.domain.models import GroupSpec, WeightReport


class WeightsCommandHandler(BaseCommandHandler):
    """Handler for the weights command."""

    def execute(
        self,
        model: Optional[list[GroupSpec]],
        report_path: Optional[Path],
        out: Optional[Path],
    ) -> WeightReport:
        """Execute the weights command.

        Args:
            model: True couplings for exact weights
            report_path: Estimate report for plug-in weights
            out: JSON destination (None: show a table)

        Returns:
            The weight report

        """
        use_case = ComputeWeightsUseCase()
        seed = None
        if report_path is not None:
            document = self.repository.read_json(report_path)
            estimates = OutputService.estimate_report_from_document(document)
            report = use_case.execute_plug_in(estimates, self.config_manager.get("level"))
            recorded = document.get("seed")
            seed = recorded if isinstance(recorded, int) else None
        else:
            assert model is not None
            report = use_case.execute_exact(model)

        if out is None:
            self.presenter.present_weights(report)
        else:
            self.write_document(out, "weights", OutputService.weights_body(report), seed)
        return report
