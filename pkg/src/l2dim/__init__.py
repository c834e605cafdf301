"""Exact dimension theory, L2-Betti numbers and Burnside invariants for group actions."""

__version__ = "0.1.0"
