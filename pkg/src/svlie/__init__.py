"""Exact computer algebra for the extended Schroedinger-Virasoro Lie algebra."""

__version__ = "0.1.0"
