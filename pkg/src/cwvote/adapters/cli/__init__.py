"""CLI adapter for command-line interface."""
