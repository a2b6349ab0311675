"""Finite n-fold monoidal structures: checkers and enumerators."""

__version__ = "0.1.0"
