"""Exact ordered valued field arithmetic over truncated Hahn series, with
runnable definability checks."""

__version__ = "0.1.0"
