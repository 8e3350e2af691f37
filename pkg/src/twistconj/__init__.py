"""Exact classification of twisted conjugacy classes of compact simple Lie groups."""

__version__ = "0.1.0"
