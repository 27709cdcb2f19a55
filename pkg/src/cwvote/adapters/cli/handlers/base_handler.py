"""Base handler for CLI commands."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Any, Optional

from cwvote.adapters.cli.services.output_service import OutputService
from cwvote.adapters.presenters.console_presenter import ConsolePresenter
from cwvote.adapters.repositories.file_repository import FileRepository
from cwvote.infrastructure.config.settings import ConfigManager

if TYPE_CHECKING:
    from pathlib import Path


class BaseCommandHandler(ABC):
    """Base class for CLI command handlers."""

    def __init__(
        self,
        config_path: Optional[Path] = None,
        config_overrides: Optional[dict[str, Any]] = None,
        quiet: bool = False,
    ) -> None:
        """Initialize base handler."""
        self._config_path = config_path
        self._config_overrides = config_overrides or {}
        self._quiet = quiet
        self._config_manager: ConfigManager | None = None
        self._repository: FileRepository | None = None
        self._presenter: ConsolePresenter | None = None

    @property
    def config_manager(self) -> ConfigManager:
        """Get or create config manager."""
        if self._config_manager is None:
            self._config_manager = ConfigManager()
            self._config_manager.load_config(self._config_path)
            self._config_manager.apply_overrides(self._config_overrides)
        return self._config_manager

    @property
    def repository(self) -> FileRepository:
        """Get or create file repository."""
        if self._repository is None:
            self._repository = FileRepository()
        return self._repository

    @property
    def presenter(self) -> ConsolePresenter:
        """Get or create console presenter."""
        if self._presenter is None:
            self._presenter = ConsolePresenter(quiet=self._quiet)
        return self._presenter

    def write_document(
        self, path: Path, kind: str, body: dict[str, Any], seed: Optional[int] = None
    ) -> None:
        """Write a JSON document with the standard envelope.

        ``seed`` is the seed the result derives from, or None when unknown.
        """
        self.repository.write_json(path, OutputService.envelope(kind, seed, body))
        self.presenter.present_written(path)

    @abstractmethod
    def execute(self, *args: Any, **kwargs: Any) -> Any:
        """Execute the command.

        Args:
            *args: Variable positional arguments
            **kwargs: Command-specific arguments

        Returns:
            Command execution result

        """
