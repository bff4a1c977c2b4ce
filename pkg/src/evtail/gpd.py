"""Generalized Pareto distribution: closed forms, sampling and ML fitting.

The distribution function is ``F(x) = 1 - (1 + xi x / psi) ** (-1 / xi)``
with the exponential law as the ``xi -> 0`` limit.  Shape-dependent
quantities used by the residual-CV machinery (the constant residual CV
``c_xi``, its asymptotic standard deviation and covariance function) also
live here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import DomainError, FitError
from .sample import SampleData, as_sample

# below this |xi| the exponential-limit branches are used
XI_EPS = 1e-8


@dataclass(frozen=True)
class GpdParams:
    """Shape ``xi`` and scale ``psi`` of a GPD."""

    xi: float
    psi: float

    def __post_init__(self):
        if not (math.isfinite(self.xi) and math.isfinite(self.psi)):
            raise DomainError("GPD parameters must be finite")
        if self.psi <= 0:
            raise DomainError(f"GPD scale psi must be positive, got {self.psi!r}")

    @property
    def endpoint(self) -> float:
        """Upper end of the support: ``psi/|xi|`` for ``xi < 0``, else inf."""
        if self.xi < 0:
            return self.psi / -self.xi
        return math.inf

    @property
    def mean(self) -> float:
        return self.psi / (1 - self.xi) if self.xi < 1 else math.inf


@dataclass(frozen=True)
class FitResult:
    params: GpdParams
    std_errors: tuple[float, float]
    log_likelihood: float
    converged: bool
    n: int = 0

    @property
    def xi(self) -> float:
        return self.params.xi

    @property
    def psi(self) -> float:
        return self.params.psi


def _scalar_or_array(a):
    return float(a) if np.ndim(a) == 0 else a


def gpd_cdf(params: GpdParams, x):
    """Distribution function; 0 below the origin, 1 beyond the endpoint."""
    x = np.asarray(x, dtype=float)
    xi, psi = params.xi, params.psi
    xp = np.maximum(x, 0.0)
    if abs(xi) < XI_EPS:
        out = -np.expm1(-xp / psi)
    else:
        z = xi * xp / psi
        with np.errstate(divide="ignore", invalid="ignore"):
            out = -np.expm1(-np.log1p(np.maximum(z, -1.0)) / xi)
        if xi < 0:
            out = np.where(xp >= params.endpoint, 1.0, out)
    out = np.where(x <= 0, 0.0, out)
    return _scalar_or_array(out)


def gpd_quantile(params: GpdParams, p):
    """Quantile function ``psi ((1-p)^-xi - 1) / xi``.

    ``p = 1`` returns the endpoint for ``xi < 0`` and raises otherwise.
    """
    p = np.asarray(p, dtype=float)
    if np.any((p < 0) | (p > 1)) or np.any(np.isnan(p)):
        raise DomainError("probabilities must lie in [0, 1]")
    xi, psi = params.xi, params.psi
    if np.any(p == 1):
        if xi >= 0:
            raise DomainError("quantile at p=1 is unbounded for xi >= 0")
    with np.errstate(divide="ignore"):
        lg = np.log1p(-p)
        if abs(xi) < XI_EPS:
            out = -psi * lg
        else:
            out = psi * np.expm1(-xi * lg) / xi
    if xi < 0:
        out = np.where(p == 1, params.endpoint, out)
    return _scalar_or_array(out)


def gpd_sample(params: GpdParams, n: int, rng=None) -> SampleData:
    """Draw ``n`` variates by inverting the CDF at uniforms from ``rng``.

    ``rng`` may be a ``numpy.random.Generator``, a seed accepted by
    ``numpy.random.default_rng``, or any object with a ``random(size)``
    method.
    """
    if n < 1:
        raise DomainError(f"sample size must be >= 1, got {n}")
    if rng is None or isinstance(rng, (int, np.integer, np.random.SeedSequence)):
        rng = np.random.default_rng(rng)
    u = np.asarray(rng.random(n), dtype=float)
    return SampleData(gpd_quantile(params, u))


def residual_params(params: GpdParams, t: float) -> GpdParams:
    """Parameters of the excess distribution over ``t``: ``(xi, psi + xi t)``."""
    if t < 0:
        raise DomainError(f"threshold must be non-negative, got {t!r}")
    if t >= params.endpoint:
        raise DomainError(
            f"threshold {t!r} is at or beyond the support endpoint {params.endpoint!r}; the tail is empty"
        )
    return GpdParams(params.xi, params.psi + params.xi * t)


def cv_of_xi(xi: float) -> float:
    """Constant residual CV of a GPD, ``sqrt(1 / (1 - 2 xi))``."""
    if xi >= 0.5:
        raise DomainError(f"residual CV is undefined for xi >= 0.5 (got {xi!r})")
    return math.sqrt(1.0 / (1.0 - 2.0 * xi))


def xi_of_cv(c: float) -> float:
    """Inverse of :func:`cv_of_xi`."""
    if not c > 0:
        raise DomainError(f"coefficient of variation must be positive, got {c!r}")
    return (c * c - 1.0) / (2.0 * c * c)


def _check_quarter(xi):
    if xi >= 0.25:
        raise DomainError(
            f"asymptotic normality of the residual CV requires xi < 0.25 (got {xi!r})"
        )


def asymptotic_variance(xi: float) -> float:
    _check_quarter(xi)
    return (
        (1 - xi) ** 2
        * (6 * xi**2 - xi + 1)
        / ((1 - 2 * xi) ** 2 * (1 - 3 * xi) * (1 - 4 * xi))
    )


def asymptotic_sd(xi: float) -> float:
    """Asymptotic standard deviation of ``sqrt(n) (cv - c_xi)``."""
    return math.sqrt(asymptotic_variance(xi))


def cv_covariance(xi: float, psi: float, s: float, t: float) -> float:
    """Covariance function of the limiting Gaussian process of the residual CV."""
    _check_quarter(xi)
    if psi <= 0:
        raise DomainError(f"psi must be positive, got {psi!r}")
    if s < 0 or t < 0:
        raise DomainError("thresholds must be non-negative")
    if t < s:
        s, t = t, s
    if abs(xi) < XI_EPS:
        return math.exp(s / psi)
    base = psi + xi * s
    if base <= 0 or psi + xi * t <= 0:
        raise DomainError("thresholds must lie inside the support")
    poly = (
        6 * xi**4 * t**2
        + 12 * psi * xi**3 * t
        + 8 * xi**3 * s * t
        - 9 * xi**3 * t**2
        + 6 * psi**2 * xi**2
        + 8 * psi * xi**2 * s
        - 10 * psi * xi**2 * t
        - 2 * xi**2 * s * t
        + 3 * xi**2 * t**2
        - psi**2 * xi
        - 2 * psi * xi * s
        + 4 * psi * xi * t
        + psi**2
    )
    growth = (base / psi) ** (1 / xi)
    denom = (1 - 3 * xi) * (1 - 2 * xi) ** 2 * (1 - 4 * xi) * base**2
    return growth * (1 - xi) ** 2 * poly / denom


def _log_likelihood(xi: float, psi: float, x: np.ndarray) -> float:
    if psi <= 0:
        return -math.inf
    if abs(xi) < XI_EPS:
        return -x.size * math.log(psi) - x.sum() / psi
    z = xi * x / psi
    if z.min() <= -1.0:
        return -math.inf
    return -x.size * math.log(psi) - (1.0 / xi + 1.0) * np.log1p(z).sum()


def gpd_log_likelihood(params: GpdParams, sample) -> float:
    """Sum of log densities; ``-inf`` if any point falls outside the support."""
    x = np.asarray(sample, dtype=float)
    if x.size and x.min() < 0:
        return -math.inf
    return float(_log_likelihood(params.xi, params.psi, x))


def _hessian(f, theta, steps):
    k = len(theta)
    h = np.empty((k, k))
    f0 = f(theta)
    for i in range(k):
        ei = np.zeros(k)
        ei[i] = steps[i]
        h[i, i] = (f(theta + ei) - 2 * f0 + f(theta - ei)) / steps[i] ** 2
        for j in range(i + 1, k):
            ej = np.zeros(k)
            ej[j] = steps[j]
            h[i, j] = h[j, i] = (
                f(theta + ei + ej) - f(theta + ei - ej) - f(theta - ei + ej) + f(theta - ei - ej)
            ) / (4 * steps[i] * steps[j])
    return h


def gpd_mle_fit(sample, *, xi_offsets=(-0.4, -0.2, 0.0, 0.2, 0.4)) -> FitResult:
    """Maximum-likelihood GPD fit of non-negative data.

    Optimizes over ``(xi, log psi)`` with Nelder-Mead started from the
    CV-based estimate shifted by each of ``xi_offsets``.  The data are
    divided by their mean first, which makes the shape estimate invariant
    to the units of the data.  Standard errors come from the inverse of the
    numerical observed information and are only reported (otherwise NaN)
    when ``xi > -0.5``.  Shapes ``xi <= -1`` are excluded: there the
    likelihood is unbounded.
    """
    x = as_sample(sample).values
    if x.size < 2:
        raise FitError("need at least two observations to fit a GPD")
    if x[0] < 0:
        raise FitError("GPD fitting requires non-negative data (excesses)")
    if x[0] == x[-1]:
        raise FitError("cannot fit a GPD to a sample with all values equal")

    scale = float(x.mean())
    y = x / scale

    def nll(theta):
        xi, lpsi = theta
        if xi <= -1.0 or not np.isfinite(lpsi):
            return math.inf
        ll = _log_likelihood(xi, math.exp(lpsi), y)
        return -ll if np.isfinite(ll) else math.inf

    cv = float(y.std(ddof=1))  # mean of y is 1
    xi0 = min(max(xi_of_cv(cv), -0.9), 0.9)
    ymax = float(y[-1])
    best = None
    for off in xi_offsets:
        xs = min(max(xi0 + off, -0.95), 1.5)
        psi0 = (1 - xs) if xs < 1 else 0.5
        if xs < 0:
            psi0 = max(psi0, -xs * ymax * 1.05)
        res = optimize.minimize(
            nll,
            [xs, math.log(psi0)],
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000},
        )
        if best is None or res.fun < best.fun:
            best = res
    # restart from the best point to escape a collapsed simplex
    final = optimize.minimize(
        nll,
        best.x,
        method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-13, "maxiter": 4000},
    )
    if final.fun > best.fun:
        final = best
    if not np.isfinite(final.fun):
        raise FitError("likelihood maximization failed to find a feasible point")

    xi_hat = float(final.x[0])
    psi_std = math.exp(final.x[1])
    params = GpdParams(xi_hat, psi_std * scale)
    loglik = gpd_log_likelihood(params, x)

    se = (math.nan, math.nan)
    if xi_hat > -0.5:

        def nll_natural(theta):
            ll = _log_likelihood(theta[0], theta[1], y)
            return -ll if np.isfinite(ll) else math.inf

        theta = np.array([xi_hat, psi_std])
        steps = 1e-4 * np.maximum(np.abs(theta), 1e-2)
        h = _hessian(nll_natural, theta, steps)
        if np.all(np.isfinite(h)):
            try:
                cov = np.linalg.inv(h)
            except np.linalg.LinAlgError:
                cov = None
            if cov is not None and cov[0, 0] > 0 and cov[1, 1] > 0:
                se = (math.sqrt(cov[0, 0]), math.sqrt(cov[1, 1]) * scale)
    return FitResult(params, se, loglik, bool(final.success), n=int(x.size))
