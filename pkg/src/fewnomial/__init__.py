"""Exact and numerical tools for building fewnomial systems with many positive solutions."""

__version__ = "0.1.0"
