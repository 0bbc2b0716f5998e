"""Exact combinatorics of the path category Lambda(k): boundary space,
invariant measure, ordered K-theory, AF chain, and groupoid filtration."""

__version__ = "0.1.0"
