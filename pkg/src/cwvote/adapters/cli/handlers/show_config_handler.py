"""Show config command handler."""

from cwvote.adapters.cli.handlers.base_handler import BaseCommandHandler
from cwvote.adapters.cli.services.output_service import OutputService


class ShowConfigCommandHandler(BaseCommandHandler):
    """Handler for the show-config command."""

    def execute(self, output_format: str) -> None:
        """Execute the show-config command.

        Args:
            output_format: Output format (console/json)

        """
        config = self.config_manager.get_global_config()
        source = self.config_manager.source
        source_name = str(source) if source is not None else None
        if output_format == "console":
            OutputService.show_config_console(config, source_name)
        elif output_format == "json":
            OutputService.show_config_json(config, source_name)
