"""Error handling for cwvote infrastructure."""

from pathlib import Path

from cwvote.domain.errors import EXIT_USAGE, CwVoteError, DataError


class ConfigurationError(CwVoteError):
    """Error in configuration setup."""

    exit_code = EXIT_USAGE

    def __init__(self, message: str) -> None:
        super().__init__(f"Configuration error: {message}")


class FileFormatError(DataError):
    """Error when an input file cannot be read or parsed."""

    def __init__(self, file_path: Path, original_error: object) -> None:
        super().__init__(f"Failed to read file {file_path}: {original_error}")
        self.file_path = file_path
        self.original_error = original_error
