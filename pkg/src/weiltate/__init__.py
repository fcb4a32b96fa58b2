"""Exact divisor-level combinatorics of Weil numbers for products of elliptic curves."""

__version__ = "0.1.0"
