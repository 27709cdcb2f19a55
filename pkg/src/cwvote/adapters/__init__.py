"""Interface adapters layer - handles external interactions."""
