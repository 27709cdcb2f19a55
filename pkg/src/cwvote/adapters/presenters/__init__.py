"""Presenter implementations for console output."""
