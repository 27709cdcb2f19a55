"""Domain layer - Curie-Weiss computations, estimation and voting weights."""
