from .model import (
    ArimaCoefficients,
    ArimaOrder,
    FittedModel,
    Forecast,
    ar_roots_outside,
    ma_roots_outside,
)
from .estimate import estimate_css, estimate_mle, log_likelihood
from .forecast import forecast, psi_weights
from .select import select_order
from .stationarity import kpss_statistic, select_d

__all__ = [
    "ArimaCoefficients",
    "ArimaOrder",
    "FittedModel",
    "Forecast",
    "ar_roots_outside",
    "ma_roots_outside",
    "estimate_css",
    "estimate_mle",
    "log_likelihood",
    "forecast",
    "psi_weights",
    "select_order",
    "kpss_statistic",
    "select_d",
]
