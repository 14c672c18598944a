"""Jacobi structures, generalized Lie bialgebroids, morphisms and triangular data."""

__all__ = ["jacobi", "pair", "morphism", "triangular"]
