"""Exact-arithmetic engine for representations of the loop-Virasoro algebra."""

from .scalars import GaussianRational, scalar

__version__ = "0.1.0"

__all__ = ["GaussianRational", "scalar", "__version__"]
