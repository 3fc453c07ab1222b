"""Streaming mean and unbiased sample variance: batch moments combined with Chan's merge."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike


@dataclass(frozen=True)
class RunningMoments:
    """Count, mean and sum of squared deviations M2 of a sample."""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    @property
    def variance(self) -> float:
        """Unbiased sample variance M2 / (n - 1); 0 for fewer than two samples."""
        if self.count < 2:
            return 0.0
        return max(self.m2 / (self.count - 1), 0.0)

    def merge(self, other: RunningMoments) -> RunningMoments:
        """Combine two disjoint samples."""
        if other.count == 0:
            return self
        if self.count == 0:
            return other
        n = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * other.count / n
        m2 = self.m2 + other.m2 + delta * delta * self.count * other.count / n
        return RunningMoments(n, mean, m2)

    @classmethod
    def from_samples(cls, samples: ArrayLike) -> RunningMoments:
        """Moments of a whole batch; deviations are taken about the batch mean."""
        x = np.asarray(samples, dtype=float).ravel()
        if x.size == 0:
            return cls()
        mean = float(np.mean(x))
        d = x - mean
        # second term corrects the rounding error left in the mean
        m2 = float(np.dot(d, d) - d.sum() ** 2 / x.size)
        return cls(int(x.size), mean, max(m2, 0.0))


def sample_variance(samples: ArrayLike) -> float:
    """Unbiased sample variance S^2 = sum (X_i - mean)^2 / (m - 1).

    Raises:
        ValueError: If fewer than two samples are given.
    """
    x = np.asarray(samples, dtype=float).ravel()
    if x.size < 2:
        raise ValueError(f"Sample variance needs at least two samples, got {x.size}")
    return RunningMoments.from_samples(x).variance
