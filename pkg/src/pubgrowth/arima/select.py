"""Stepwise AICc order selection.

Starts from the four classic candidates, each with and without a constant
when the differencing order allows one, then walks to neighboring orders
while the AICc improves.  Ties break toward the lexicographically smallest
(p, q, with_constant), so the search is deterministic.
"""

from __future__ import annotations

from ..errors import NoModelFound, PubGrowthError
from ..series import DailySeries
from .estimate import estimate_mle
from .model import ArimaOrder, D_MAX_DEFAULT, FittedModel, P_MAX_DEFAULT, Q_MAX_DEFAULT
from .stationarity import select_d

MIN_SELECT_LENGTH = 30

_STARTS = [(2, 2), (1, 0), (0, 1), (0, 0)]


def _sort_key(fit: FittedModel):
    o = fit.order
    return (fit.aicc, o.p, o.q, o.with_constant)


def select_order(
    series: DailySeries,
    p_max: int = P_MAX_DEFAULT,
    q_max: int = Q_MAX_DEFAULT,
    d: int | None = None,
    d_max: int = D_MAX_DEFAULT,
    alpha: float = 0.05,
) -> FittedModel:
    """Fit the minimum-AICc ARIMA model found by the stepwise search.

    ``d`` overrides the KPSS-based choice of differencing order.
    """
    if len(series) < MIN_SELECT_LENGTH:
        raise PubGrowthError(
            f"need at least {MIN_SELECT_LENGTH} observations for order selection"
        )
    if d is None:
        d = select_d(series, alpha=alpha, d_max=d_max)
    const_options = (False, True) if d <= 1 else (False,)

    cache: dict[ArimaOrder, FittedModel | None] = {}

    def fit(p: int, q: int, const: bool) -> FittedModel | None:
        if not (0 <= p <= p_max and 0 <= q <= q_max):
            return None
        order = ArimaOrder(p, q=q, d=d, with_constant=const)
        if order not in cache:
            try:
                cache[order] = estimate_mle(series, order)
            except PubGrowthError:
                cache[order] = None
        return cache[order]

    candidates = [
        m for p, q in _STARTS for const in const_options if (m := fit(p, q, const))
    ]
    if not candidates:
        raise NoModelFound("every starting candidate failed to fit")
    best = min(candidates, key=_sort_key)

    improved = True
    while improved:
        improved = False
        o = best.order
        neighborhood = [
            (o.p + dp, o.q + dq, o.with_constant)
            for dp, dq in ((-1, 0), (1, 0), (0, -1), (0, 1), (-1, -1), (1, 1))
        ]
        if d <= 1:
            neighborhood.append((o.p, o.q, not o.with_constant))
        for p, q, const in neighborhood:
            candidate = fit(p, q, const)
            if candidate is not None and _sort_key(candidate) < _sort_key(best):
                best = candidate
                improved = True
    return best
