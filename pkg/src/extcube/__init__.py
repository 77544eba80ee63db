"""Exact verification toolkit for twisted exterior-cube L-factors of GU(6)."""

__version__ = "0.1.0"
