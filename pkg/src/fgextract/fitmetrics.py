"""Goodness-of-fit statistics over paired observed/predicted series.

SSE, SSR and SST are weighted sums of squares; R-square is computed as
1 - SSE/SST so that a perfect fit scores exactly 1 for any prediction, not
just least-squares ones.  Sums use exact compensated accumulation
(math.fsum), so results are independent of element order and stable for
pixel-count-sized series.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum

import numpy as np


class DegenerateVarianceError(ValueError):
    """R-square is undefined when the observed data has zero weighted variance."""


@dataclass(frozen=True, eq=False)
class PairedSeries:
    """Observed values, predicted values, and positive per-point weights.

    Weights default to all ones.  All three share one length n >= 1.
    """

    observed: np.ndarray
    predicted: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self) -> None:
        y = np.asarray(self.observed, dtype=np.float64)
        yhat = np.asarray(self.predicted, dtype=np.float64)
        if y.ndim != 1 or yhat.ndim != 1:
            raise ValueError("observed and predicted must be 1-D series")
        if y.size < 1:
            raise ValueError("series must contain at least one point")
        if y.size != yhat.size:
            raise ValueError(
                f"series lengths differ: observed {y.size} vs predicted {yhat.size}"
            )
        if self.weights is None:
            w = np.ones(y.size)
        else:
            w = np.asarray(self.weights, dtype=np.float64)
            if w.ndim != 1 or w.size != y.size:
                raise ValueError(f"weights length {w.size} does not match series {y.size}")
            if not (w > 0.0).all():
                raise ValueError("every weight must be > 0")
        y, yhat, w = y.copy(), yhat.copy(), w.copy()
        for arr in (y, yhat, w):
            arr.setflags(write=False)
        object.__setattr__(self, "observed", y)
        object.__setattr__(self, "predicted", yhat)
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.observed.size


@dataclass(frozen=True, eq=False)
class FitStats:
    """Bundle of SSE/SSR/SST/R-square plus the raw residual vector."""

    sse: float
    ssr: float
    sst: float
    r_square: float
    residuals: np.ndarray


def _weighted_mean(s: PairedSeries) -> float:
    return fsum(s.weights * s.observed) / fsum(s.weights)


def sse(s: PairedSeries) -> float:
    """Weighted summed square of residuals: sum w_i (y_i - yhat_i)^2."""
    r = s.observed - s.predicted
    return fsum(s.weights * r * r)


def ssr(s: PairedSeries) -> float:
    """Weighted sum of squares of the regression: sum w_i (yhat_i - ybar)^2,
    with ybar the weighted mean of the observed data."""
    d = s.predicted - _weighted_mean(s)
    return fsum(s.weights * d * d)


def sst(s: PairedSeries) -> float:
    """Weighted sum of squares about the mean: sum w_i (y_i - ybar)^2."""
    d = s.observed - _weighted_mean(s)
    return fsum(s.weights * d * d)


def r_square(s: PairedSeries) -> float:
    """Proportion of data variation explained by the fit: 1 - SSE/SST.

    E.g. an R-square of 0.8234 means the fit explains 82.34% of the total
    variation in the data about its mean.  Raises DegenerateVarianceError
    when SST is zero (constant observed data), never divides by zero.
    """
    total = sst(s)
    if total == 0.0:
        raise DegenerateVarianceError(
            "observed data has zero weighted variance; R-square is undefined"
        )
    return 1.0 - sse(s) / total


def residuals(s: PairedSeries) -> np.ndarray:
    """Elementwise observed - predicted."""
    return s.observed - s.predicted


def fit_stats(s: PairedSeries) -> FitStats:
    """Compute the full SSE/SSR/SST/R-square bundle for a series."""
    return FitStats(
        sse=sse(s),
        ssr=ssr(s),
        sst=sst(s),
        r_square=r_square(s),
        residuals=residuals(s),
    )
