"""CLI services."""
