"""Exact combinatorics of cyclic quotient singularities, T-chains and small surfaces."""

__version__ = "0.1.0"
