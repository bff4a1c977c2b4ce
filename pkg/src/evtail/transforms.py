"""Monotone maps exchanging heavy and light tails.

``negate_reciprocal`` is the asymptotic flip ``x -> -1/x``: a tail in the
Frechet domain with index ``xi`` becomes a bounded tail with index ``-xi``.
``stabilize`` is the exact version for GPD data: with ``c = psi/xi``,

    z = x / (c (x + c)) = 1/c - 1/(x + c)

maps GPD(xi, psi) onto GPD(-xi, xi**2/psi), whose support is ``(0, 1/c)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .gpd import GpdParams, gpd_mle_fit
from .sample import SampleData, as_sample


@dataclass(frozen=True)
class StabilizeSpec:
    """Transform constant ``c``; optionally the GPD fit it came from."""

    c: float
    source_params: Optional[GpdParams] = None

    def __post_init__(self):
        if not np.isfinite(self.c) or self.c == 0:
            raise DomainError(f"transform constant c must be finite and non-zero, got {self.c!r}")
        sp = self.source_params
        if self.c < 0 and sp is not None and sp.xi < 0 and self.c > -sp.endpoint:
            raise DomainError(
                f"c={self.c!r} breaks monotonicity: need c > 0 or c <= -{sp.endpoint!r}"
            )

    @classmethod
    def from_params(cls, params: GpdParams) -> StabilizeSpec:
        """``c = psi/xi``, the only constant giving an exact GPD image."""
        if params.xi == 0:
            raise DomainError("xi = 0 has no stabilizing constant")
        return cls(params.psi / params.xi, params)

    @classmethod
    def from_fit(cls, sample) -> StabilizeSpec:
        fit = gpd_mle_fit(sample)
        if fit.xi <= 0:
            raise DomainError(
                f"stabilizing needs a heavy tail, but the fitted shape is xi={fit.xi:.4g} <= 0"
            )
        return cls.from_params(fit.params)

    @property
    def target_params(self) -> Optional[GpdParams]:
        """Image distribution GPD(-xi, xi^2/psi) when the source fit is known."""
        sp = self.source_params
        if sp is None:
            return None
        return GpdParams(-sp.xi, sp.xi**2 / sp.psi)


def negate_reciprocal(sample) -> SampleData:
    """Apply ``x -> -1/x``.

    The map is increasing on each half-line, so the input must lie entirely
    on one side of zero.  It is an involution: applying it to its own
    (negative) output recovers the input.
    """
    x = as_sample(sample).values
    if np.any(x == 0) or (x[0] < 0 < x[-1]):
        raise DomainError("negate_reciprocal needs all values strictly positive (or all negative)")
    return SampleData(-1.0 / x)


def _coerce_spec(spec) -> StabilizeSpec:
    if isinstance(spec, StabilizeSpec):
        return spec
    return StabilizeSpec(float(spec))


def stabilize(sample, spec) -> SampleData:
    """Map ``x -> x / (c (x + c))``; ``spec`` may be a StabilizeSpec or plain ``c``."""
    spec = _coerce_spec(spec)
    x = as_sample(sample).values
    c = spec.c
    if x[0] < 0:
        raise DomainError("stabilize needs non-negative data (threshold excesses)")
    if c < 0 and x[-1] + c >= 0:
        raise DomainError(
            f"c={c!r} breaks monotonicity: every x + c must be negative, but max(x)={x[-1]!r}"
        )
    return SampleData(x / (c * (x + c)))


def inverse_stabilize(sample, spec) -> SampleData:
    """Inverse map ``z -> c^2 z / (1 - c z)``."""
    spec = _coerce_spec(spec)
    z = as_sample(sample).values
    c = spec.c
    if z[0] < 0:
        raise DomainError("inverse_stabilize needs non-negative values")
    if c > 0 and z[-1] >= 1.0 / c:
        raise DomainError(f"values must lie below 1/c = {1.0 / c!r}, got max {z[-1]!r}")
    x = c * c * z / (1.0 - c * z)
    if c < 0 and x[-1] + c >= 0:
        raise DomainError(f"values map outside the monotone range for c={c!r}")
    return SampleData(x)
