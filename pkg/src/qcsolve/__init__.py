"""Exact WDVV workbench: associativity relations and curve-count reconstruction."""

__version__ = "0.1.0"
