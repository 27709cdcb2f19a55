"""Sample command handler."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from cwvote.adapters.cli.handlers.base_handler import BaseCommandHandler
from cwvote.adapters.cli.services.output_service import OutputService
from cwvote.usecases.sample_votes import SampleVotesUseCase

if TYPE_CHECKING:
    from pathlib import Path

    from cwvote.domain.models import GroupSpec, SufficientSummary


def default_summary_path(out: Path) -> Path:
    """votes.csv -> votes.summary.json"""
    return out.with_suffix(".summary.json")


class SampleCommandHandler(BaseCommandHandler):
    """Handler for the sample command."""

    def execute(
        self,
        model: list[GroupSpec],
        out: Optional[Path],
        summary_out: Optional[Path],
    ) -> SufficientSummary:
        """Execute the sample command.

        Args:
            model: Groups to sample
            out: Vote CSV destination (None: only show the summary)
            summary_out: Summary sidecar destination

        Returns:
            The realized sufficient summary

        """
        config = self.config_manager
        n = config.get("n")
        seed = config.get("seed")
        if out is not None and summary_out is None:
            summary_out = default_summary_path(out)

        use_case = SampleVotesUseCase(self.repository, config)
        _, summary = use_case.execute(
            model,
            n,
            seed,
            out=out,
            summary_out=summary_out,
            metadata=OutputService.envelope("summary", seed, {}),
        )
        if out is None:
            self.presenter.present_summary(summary, seed)
        else:
            self.presenter.present_written(out, summary_out)
        return summary
