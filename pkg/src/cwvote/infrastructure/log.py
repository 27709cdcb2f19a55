"""Logging setup for the cwvote command line."""

import logging

from rich.console import Console
from rich.logging import RichHandler

LOGGER_NAME = "cwvote"


def configure_logging(verbose: bool = False, quiet: bool = False) -> logging.Logger:
    """Attach a rich handler writing to stderr to the ``cwvote`` logger.

    Args:
        verbose: Show debug messages
        quiet: Show errors only (wins over ``verbose``)

    Returns:
        The configured package logger

    """
    if quiet:
        level = logging.ERROR
    elif verbose:
        level = logging.DEBUG
    else:
        level = logging.WARNING

    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(level)
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)
    handler = RichHandler(
        console=Console(stderr=True),
        show_time=False,
        show_path=verbose,
        rich_tracebacks=True,
    )
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    return logger
