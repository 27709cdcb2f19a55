"""Use cases layer - orchestrates domain computations per command."""
