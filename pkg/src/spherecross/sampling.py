"""Seedable random streams and uniform sampling on the unit sphere."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import stats

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIN_NORM = 1e-6
STREAM_STEP = 0xD1B54A32D192ED03


def splitmix64(x: int) -> int:
    """SplitMix64 finalizer (Steele, Lea & Flood 2014) on a 64-bit integer."""
    x = (x + GOLDEN_GAMMA) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def mix_seed(master_seed: int, stream_index: int) -> int:
    """Derive the 64-bit seed of stream ``stream_index``.

    ``splitmix64(splitmix64(master) + (index + 1) * STREAM_STEP mod 2^64)``.
    splitmix64 is a bijection, so distinct indices under one master seed
    never share a seed.
    """
    if not 0 <= master_seed <= MASK64:
        raise ValueError("master_seed must be a 64-bit unsigned integer")
    if stream_index < 0:
        raise ValueError("stream_index must be nonnegative")
    return splitmix64((splitmix64(master_seed) + (stream_index + 1) * STREAM_STEP) & MASK64)


@dataclass
class SeededStream:
    """Reproducible random stream identified by ``(master_seed, stream_index)``."""

    master_seed: int = 0
    stream_index: int = 0
    rng: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.rng = np.random.Generator(np.random.PCG64(mix_seed(self.master_seed, self.stream_index)))

    def child(self, index: int) -> "SeededStream":
        """Stream for sub-task ``index`` under the same master seed."""
        return SeededStream(mix_seed(self.master_seed, self.stream_index), index)


def sample_unit_vectors(stream: SeededStream, k: int) -> np.ndarray:
    """``k`` independent uniform points on the sphere, shape ``(k, 3)``."""
    out = np.empty((k, 3))
    filled = 0
    while filled < k:
        g = stream.rng.standard_normal((k - filled, 3))
        norms = np.linalg.norm(g, axis=1)
        keep = norms >= MIN_NORM
        g = g[keep] / norms[keep, None]
        out[filled:filled + len(g)] = g
        filled += len(g)
    return out


def sample_unit_vector(stream: SeededStream) -> np.ndarray:
    return sample_unit_vectors(stream, 1)[0]


def arc_length_cdf(alpha):
    """CDF of the distance between two independent uniform points."""
    return (1.0 - np.cos(np.clip(alpha, 0.0, np.pi))) / 2.0


def pairwise_angle_density_test(stream: SeededStream, samples: int):
    """Kolmogorov-Smirnov test of pairwise distances against ``(1 - cos a) / 2``.

    Returns scipy's ``KstestResult`` (``statistic``, ``pvalue``).
    """
    if samples < 10_000:
        raise ValueError("at least 10^4 samples are required")
    p = sample_unit_vectors(stream, samples)
    q = sample_unit_vectors(stream, samples)
    cross = np.linalg.norm(np.cross(p, q), axis=1)
    alpha = np.arctan2(cross, np.einsum("ij,ij->i", p, q))
    return stats.kstest(alpha, arc_length_cdf)
