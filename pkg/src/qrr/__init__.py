"""Exact truncated q-series and a verifier for Rogers-Ramanujan type identities."""

from .errors import QSeriesError
from .series import FormalSeries, Term, equal_to_order, series_add, series_invert, series_mul

__version__ = "0.1.0"

__all__ = [
    "FormalSeries", "QSeriesError", "Term", "equal_to_order",
    "series_add", "series_invert", "series_mul", "__version__",
]
