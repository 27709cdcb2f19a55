"""Repository implementations for vote and report files."""
