"""Cocycle-twisted calculus and the biproduct algebroid."""

__all__ = ["deformed", "biproduct"]
