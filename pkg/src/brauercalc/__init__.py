"""Exact symbolic calculator for cup/cap/crossing diagram categories."""

__version__ = "0.1.0"
