"""Exact enumeration of lattice walks by winding angle."""
from .series import SqrtKSeries

__version__ = "0.1.0"
__all__ = ["SqrtKSeries", "__version__"]
