"""Monodromy of trigonometric KZ connections for type A degenerate affine Hecke algebras."""

__version__ = "0.1.0"
