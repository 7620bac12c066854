"""Burstiness: how far peak load sits above average load.

The ratio b = max / mean over equal sub-periods of an observation
window. Ratios from nested timescales (say monthly, daily, hourly)
multiply into one peak-over-average factor for the whole window.
"""

from __future__ import annotations

import math

from .errors import DegenerateSeriesError


def burstiness_from_series(samples: list[float]) -> float:
    """Peak-to-mean ratio of a measurement series.

    Samples must be non-negative with a positive mean. The result lies in
    [1, len(samples)]; both bounds hold exactly, the clamp below only
    strips rounding noise from the division.
    """
    if not samples:
        raise DegenerateSeriesError("empty series")
    for s in samples:
        if s < 0 or math.isnan(s):
            raise DegenerateSeriesError(f"negative or NaN sample: {s!r}")
    total = math.fsum(samples)
    if total == 0.0:
        raise DegenerateSeriesError("series mean is zero")
    peak = max(samples)
    ratio = (peak * len(samples)) / total
    return min(max(ratio, 1.0), float(len(samples)))


def burstiness_from_active_hours(active_hours: float) -> float:
    """Burstiness of a daily load concentrated into ``active_hours`` of
    the 24-hour day, assuming the load is flat while active."""
    if not 0.0 < active_hours <= 24.0:
        raise ValueError(f"active hours must lie in (0, 24], got {active_hours!r}")
    return 24.0 / active_hours


def compose(factors: list[float]) -> float:
    """Multiply burstiness factors from nested timescales.

    Every factor is a peak-over-mean ratio and must be >= 1; the empty
    composition is 1 (no amplification).
    """
    result = 1.0
    for f in factors:
        if f < 1.0 or math.isnan(f):
            raise ValueError(f"burstiness factor below 1: {f!r}")
        result *= f
    return result
