"""Exact combinatorics workbench for the triangular lattice."""

__version__ = "0.1.0"
