"""Dyadic dispute forecasting, relevance ranking, and intervention search."""

__version__ = "0.1.0"
