"""Empirical residual statistics over thresholds.

The residual CV at ``t`` is ``sd / mean`` of the excesses ``x - t`` of the
observations exceeding ``t``; standard deviations use the ``n - 1``
denominator throughout.  By default exceedances are taken inclusively
(``x >= t``); pass ``inclusive=False`` for the strict convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import norm

from .errors import DegenerateTailError, DomainError, InsufficientTailError
from .gpd import asymptotic_sd, cv_of_xi
from .sample import SampleData, as_sample

DEFAULT_MIN_TAIL = 8


def _exceedances(x, t, inclusive):
    return x[x >= t] if inclusive else x[x > t]


def residual_mean(sample, t: float, inclusive: bool = True) -> float:
    ex = _exceedances(as_sample(sample).values, t, inclusive)
    if ex.size == 0:
        raise InsufficientTailError(f"no exceedances of threshold {t!r}")
    return float(np.mean(ex - t))


def residual_variance(sample, t: float, inclusive: bool = True) -> float:
    ex = _exceedances(as_sample(sample).values, t, inclusive)
    if ex.size < 2:
        raise InsufficientTailError(f"need at least 2 exceedances of {t!r}, got {ex.size}")
    return float(np.var(ex - t, ddof=1))


def residual_cv(sample, t: float = 0.0, inclusive: bool = True) -> float:
    """Coefficient of variation of the excesses over ``t``."""
    ex = _exceedances(as_sample(sample).values, t, inclusive) - t
    if ex.size < 2:
        raise InsufficientTailError(f"need at least 2 exceedances of {t!r}, got {ex.size}")
    mean = ex.mean()
    if mean == 0:
        raise DegenerateTailError(f"all exceedances equal the threshold {t!r}")
    return float(ex.std(ddof=1) / mean)


def _suffix_moments(x):
    """Mean and sample variance of ``x[i:]`` for every ``i`` (Welford from the top)."""
    n = x.size
    means = np.empty(n)
    variances = np.full(n, np.nan)
    mean = 0.0
    m2 = 0.0
    for count, i in enumerate(range(n - 1, -1, -1), start=1):
        delta = x[i] - mean
        mean += delta / count
        m2 += delta * (x[i] - mean)
        means[i] = mean
        if count > 1:
            variances[i] = m2 / (count - 1)
    return means, variances


def _tail_table(sample, min_tail, inclusive):
    x = as_sample(sample).values
    thresholds = np.unique(x)
    side = "left" if inclusive else "right"
    starts = np.searchsorted(x, thresholds, side=side)
    counts = x.size - starts
    keep = counts >= max(min_tail, 2)
    thresholds, starts, counts = thresholds[keep], starts[keep], counts[keep]
    if thresholds.size == 0:
        raise InsufficientTailError(
            f"no threshold leaves at least {max(min_tail, 2)} exceedances (n={x.size})"
        )
    means, variances = _suffix_moments(x)
    mean_excess = means[starts] - thresholds
    return x, thresholds, counts, mean_excess, variances[starts]


@dataclass(frozen=True)
class CvPlot:
    """Residual CV evaluated at order-statistic thresholds.

    Arrays are aligned; ``band_low``/``band_high`` are ``None`` when no
    reference shape was given or it lies outside ``xi < 0.25``.
    """

    thresholds: np.ndarray
    n_exceed: np.ndarray
    cv: np.ndarray
    band_low: Optional[np.ndarray]
    band_high: Optional[np.ndarray]
    reference_cv: Optional[float]
    level: float
    n: int
    xi_ref: Optional[float] = None

    def __len__(self):
        return self.thresholds.size

    @property
    def removed(self) -> np.ndarray:
        """Number of observations below each threshold (the plot's usual x-axis)."""
        return self.n - self.n_exceed

    @property
    def has_bands(self) -> bool:
        return self.band_low is not None

    @property
    def points(self) -> list[dict]:
        out = []
        for i in range(len(self)):
            rec = {
                "threshold": float(self.thresholds[i]),
                "n_exceed": int(self.n_exceed[i]),
                "cv": float(self.cv[i]),
                "band_low": None,
                "band_high": None,
            }
            if self.has_bands:
                rec["band_low"] = float(self.band_low[i])
                rec["band_high"] = float(self.band_high[i])
            out.append(rec)
        return out


@dataclass(frozen=True)
class MeanExcessPlot:
    thresholds: np.ndarray
    n_exceed: np.ndarray
    mean_excess: np.ndarray
    n: int

    def __len__(self):
        return self.thresholds.size

    @property
    def points(self) -> list[dict]:
        return [
            {"threshold": float(t), "n_exceed": int(c), "mean_excess": float(m)}
            for t, c, m in zip(self.thresholds, self.n_exceed, self.mean_excess)
        ]


def normal_quantile(q: float) -> float:
    return float(norm.ppf(q))


def cv_bands(xi: float, n_exceed, level: float = 0.90):
    """Pointwise asymptotic band ``c_xi -/+ z sigma_xi / sqrt(n(t))``."""
    if not 0 < level < 1:
        raise DomainError(f"confidence level must be in (0, 1), got {level!r}")
    c = cv_of_xi(xi)
    half = normal_quantile((1 + level) / 2) * asymptotic_sd(xi) / np.sqrt(np.asarray(n_exceed, float))
    return c - half, c + half


def cv_plot(
    sample,
    min_tail: int = DEFAULT_MIN_TAIL,
    xi_ref: Optional[float] = None,
    level: float = 0.90,
    inclusive: bool = True,
) -> CvPlot:
    """CV-plot over all distinct order statistics with ``min_tail`` exceedances left."""
    s = as_sample(sample)
    if s.n <= min_tail:
        raise InsufficientTailError(f"sample size {s.n} must exceed min_tail={min_tail}")
    _, thresholds, counts, mean_excess, variances = _tail_table(s, min_tail, inclusive)
    ok = mean_excess > 0
    thresholds, counts = thresholds[ok], counts[ok]
    cv = np.sqrt(variances[ok]) / mean_excess[ok]
    if thresholds.size == 0:
        raise InsufficientTailError("every candidate threshold has a degenerate tail")

    low = high = None
    reference = None
    if xi_ref is not None:
        if xi_ref < 0.5:
            reference = cv_of_xi(xi_ref)
        if xi_ref < 0.25:
            low, high = cv_bands(xi_ref, counts, level)
    return CvPlot(thresholds, counts, cv, low, high, reference, level, s.n, xi_ref)


def mean_excess_plot(sample, min_tail: int = DEFAULT_MIN_TAIL, inclusive: bool = True) -> MeanExcessPlot:
    s = as_sample(sample)
    if s.n <= min_tail:
        raise InsufficientTailError(f"sample size {s.n} must exceed min_tail={min_tail}")
    _, thresholds, counts, mean_excess, _ = _tail_table(s, min_tail, inclusive)
    return MeanExcessPlot(thresholds, counts, mean_excess, s.n)


def empirical_quantile(sample, p, method: str = "interpolated"):
    """Empirical quantile function.

    ``"lower"`` is the left-continuous inverse ``inf{x : F_n(x) >= p}``, always
    an order statistic.  ``"interpolated"`` interpolates linearly at position
    ``(n - 1) p + 1`` between adjacent order statistics (R's default rule).
    """
    x = as_sample(sample).values
    p_arr = np.asarray(p, dtype=float)
    if np.any((p_arr < 0) | (p_arr > 1)) or np.any(np.isnan(p_arr)):
        raise DomainError("probabilities must lie in [0, 1]")
    n = x.size
    if method == "lower":
        fuzz = 4 * np.finfo(float).eps * n
        idx = np.clip(np.ceil(n * p_arr - fuzz).astype(int), 1, n) - 1
        out = x[idx]
    elif method == "interpolated":
        out = type7_quantiles(x, p_arr)
    else:
        raise DomainError(f"unknown quantile method {method!r}")
    return float(out) if out.ndim == 0 else out


def type7_quantiles(x_sorted, probs):
    """Linear-interpolation quantiles of sorted rows (last axis).

    Works on a single sorted vector or on a matrix of sorted rows sharing
    the same probabilities.
    """
    x_sorted = np.asarray(x_sorted, dtype=float)
    probs = np.asarray(probs, dtype=float)
    n = x_sorted.shape[-1]
    index = (n - 1) * probs
    lo = np.floor(index).astype(int)
    hi = np.ceil(index).astype(int)
    h = index - lo
    qlo = x_sorted[..., lo]
    qhi = x_sorted[..., hi]
    interp = (h > 0) & (qhi != qlo)
    return np.where(interp, (1 - h) * qlo + h * qhi, qlo)


def band_coverage(plot: CvPlot, min_exceed: int = 0) -> float:
    """Fraction of plotted CVs inside their band, over points with ``n_exceed >= min_exceed``."""
    if not plot.has_bands:
        raise DomainError("plot has no confidence bands")
    sel = plot.n_exceed >= min_exceed
    if not np.any(sel):
        return math.nan
    inside = (plot.cv[sel] >= plot.band_low[sel]) & (plot.cv[sel] <= plot.band_high[sel])
    return float(inside.mean())


__all__ = [
    "SampleData",
    "CvPlot",
    "MeanExcessPlot",
    "residual_mean",
    "residual_variance",
    "residual_cv",
    "cv_plot",
    "cv_bands",
    "mean_excess_plot",
    "empirical_quantile",
    "type7_quantiles",
    "band_coverage",
]
