"""Exact symbolic calculus for Lie algebroids with 1-cocycles."""

__all__ = ["core", "calculus", "structures", "dsl", "cli", "main"]
