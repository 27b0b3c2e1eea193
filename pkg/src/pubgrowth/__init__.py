"""Daily publication-count series, ARIMA fitting, and growth forecasting."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .series import DailySeries, DifferencedSeries, convert, difference, from_events, integrate

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "DailySeries",
    "DifferencedSeries",
    "convert",
    "difference",
    "from_events",
    "integrate",
]
