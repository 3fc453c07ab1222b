"""Sampling oracle: the only source of noisy evaluations y = f(x) + eps_x."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from app.modules.noise.field import Distribution, NoiseField
from app.modules.noise.targets import TargetFunction
from app.modules.stats.variance import RunningMoments

logger = logging.getLogger(__name__)

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class SampleSummary:
    mean: float
    variance: float
    count: int


def derive_seed(master_seed: int, *keys: int) -> int:
    """A 64-bit seed for the stream identified by ``keys`` under ``master_seed``."""
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(int(k) for k in keys))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


class SamplingOracle:
    """Noisy evaluations of ``target`` under ``noise`` from a private PCG64 stream.

    Not thread-safe: make one oracle per trial. ``samples_drawn`` counts every
    draw handed out.
    """

    def __init__(self, target: TargetFunction, noise: NoiseField, rng_seed: int) -> None:
        self.target = target
        self.noise = noise
        self.rng_seed = rng_seed
        self.samples_drawn = 0
        self._rng = np.random.Generator(np.random.PCG64(rng_seed))
        dep = noise.dependence
        self._local_scale = math.sqrt(1.0 - dep.weight**2)
        # one standard-normal component shared by every draw of this oracle
        self._shared = float(self._rng.standard_normal()) if dep.shared else 0.0

    def _standard_draws(self, size: int) -> np.ndarray:
        if self.noise.distribution is Distribution.UNIFORM:
            z = self._rng.uniform(-_SQRT3, _SQRT3, size)
        else:
            z = self._rng.standard_normal(size)
        if self.noise.dependence.shared:
            z = self._local_scale * z + self.noise.dependence.weight * self._shared
        return z

    @staticmethod
    def _check_points(xs: np.ndarray) -> None:
        if xs.size and not (np.all(xs >= -1.0) and np.all(xs <= 1.0)):
            bad = xs[(xs < -1.0) | (xs > 1.0) | np.isnan(xs)][0]
            raise ValueError(f"x = {bad} lies outside [-1, 1]")

    def sample(self, x: float) -> float:
        """One draw f(x) + eps."""
        xs = np.asarray([x], dtype=float)
        self._check_points(xs)
        eps = self.noise.sigma(xs) * self._standard_draws(1)
        self.samples_drawn += 1
        return float(self.target(xs)[0] + eps[0])

    def sample_many(self, x: float, k: int) -> SampleSummary:
        """Mean and unbiased variance of ``k`` fresh draws at ``x``."""
        if k < 1:
            raise ValueError(f"Number of draws must be positive, got {k}")
        moments = self.sample_counts([x], [k])[0]
        return SampleSummary(moments.mean, moments.variance, moments.count)

    def sample_nodes(self, xs: ArrayLike) -> np.ndarray:
        """One draw at each point of ``xs``."""
        x = np.asarray(xs, dtype=float).ravel()
        self._check_points(x)
        eps = self.noise.sigma(x) * self._standard_draws(x.size)
        self.samples_drawn += x.size
        return self.target(x) + eps

    def sample_counts(self, xs: ArrayLike, counts: ArrayLike) -> list[RunningMoments]:
        """Draw ``counts[i]`` samples at ``xs[i]`` and return per-node moments.

        Draws are consumed from the stream node by node, in order. A zero count
        yields empty moments.
        """
        x = np.asarray(xs, dtype=float).ravel()
        k = np.asarray(counts, dtype=np.int64).ravel()
        if x.shape != k.shape:
            raise ValueError("xs and counts must have the same length")
        if np.any(k < 0):
            raise ValueError("Sample counts must be nonnegative")
        self._check_points(x)
        total = int(k.sum())
        z = self._standard_draws(total)
        self.samples_drawn += total

        fx = np.asarray(self.target(x), dtype=float)
        sig = self.noise.sigma(x)
        nonzero = k > 0
        starts = np.concatenate(([0], np.cumsum(k)[:-1]))[nonzero]
        means = np.zeros(x.size)
        m2 = np.zeros(x.size)
        if total:
            eps = np.repeat(sig, k) * z
            sums = np.add.reduceat(eps, starts)
            eps_mean = sums / k[nonzero]
            dev = eps - np.repeat(eps_mean, k[nonzero])
            means[nonzero] = fx[nonzero] + eps_mean
            m2[nonzero] = np.add.reduceat(dev * dev, starts)
        return [
            RunningMoments(int(k[i]), float(means[i]), float(m2[i])) if k[i] else RunningMoments()
            for i in range(x.size)
        ]
