"""Validated, sorted numeric samples."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError


@dataclass(frozen=True, eq=False)
class SampleData:
    """Finite observations stored in ascending order.

    The array is copied, sorted and made read-only on construction, so a
    ``SampleData`` can be shared freely.
    """

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float).ravel()
        if v.size == 0:
            raise DataError("sample is empty")
        if not np.all(np.isfinite(v)):
            raise DataError("sample contains NaN or infinite values")
        v.sort()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.size

    def __len__(self):
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.values
        return self.values.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, SampleData):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"SampleData(n={self.n}, min={self.values[0]:g}, max={self.values[-1]:g})"

    def scaled(self, a: float) -> SampleData:
        return SampleData(self.values * a)

    def excesses(self, t: float, inclusive: bool = False) -> SampleData:
        """Threshold excesses ``x - t`` of the exceedances of ``t``."""
        x = self.values
        keep = x >= t if inclusive else x > t
        if not np.any(keep):
            raise DataError(f"no observations above threshold {t!r}")
        return SampleData(x[keep] - t)


def as_sample(data) -> SampleData:
    """Coerce array-likes to :class:`SampleData` (no copy if already one)."""
    if isinstance(data, SampleData):
        return data
    return SampleData(data)
