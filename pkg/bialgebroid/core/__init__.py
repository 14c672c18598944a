"""Scalar ring, exterior algebra, algebroids, sampling and reports."""

__all__ = ["scalar", "graded", "algebroid", "sampling", "reports"]
