"""Bounds command handler."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from cwvote.adapters.cli.handlers.base_handler import BaseCommandHandler
from cwvote.adapters.cli.services.output_service import OutputService
from cwvote.usecases.compute_bounds import ComputeBoundsUseCase

if TYPE_CHECKING:
    from pathlib import Path

    from cwvote.domain.models import ClosedSet, GroupSpec, TailBound, TailKind


class BoundsCommandHandler(BaseCommandHandler):
    """Handler for the bounds command."""

    def execute(
        self,
        model: list[GroupSpec],
        kind: TailKind,
        sets: Optional[list[ClosedSet]],
        out: Optional[Path],
    ) -> TailBound:
        """Execute the bounds command."""
        bound = ComputeBoundsUseCase().execute(model, self.config_manager.get("n"), kind, sets)
        if out is None:
            self.presenter.present_bound(bound)
        else:
            self.write_document(out, "bound", OutputService.bound_body(bound))
        return bound
