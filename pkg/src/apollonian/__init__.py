"""Exact construction and analysis of integral Apollonian gaskets."""

__version__ = "0.1.0"
