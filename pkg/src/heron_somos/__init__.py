"""Exact Somos-5 sequences, QRT dynamics and Heron triangles with two rational medians."""

__version__ = "0.1.0"
