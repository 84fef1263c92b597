"""Exact computations with the BV operad, its Q-construction and their graph complexes."""

__version__ = "0.1.0"
