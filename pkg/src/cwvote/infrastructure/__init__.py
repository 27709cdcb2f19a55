"""Infrastructure layer - configuration, logging and infrastructure errors."""
