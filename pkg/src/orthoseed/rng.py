"""Small reproducible generator for the ridge experiment.

xorshift64* seeded through one splitmix64 step. The output stream depends
only on the seed, so reports are identical across platforms and numpy
versions.
"""
from __future__ import annotations

import numpy as np

__all__ = ["DEFAULT_SEED", "XorShift64Star"]

DEFAULT_SEED = 20240420

_MASK = (1 << 64) - 1


def _splitmix64(x):
    z = (x + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class XorShift64Star:
    """xorshift64* generator; ``uniform`` yields doubles in [0, 1) with 53 bits."""

    def __init__(self, seed=DEFAULT_SEED):
        self.seed = int(seed)
        state = _splitmix64(self.seed & _MASK)
        self._state = state or 0x2545F4914F6CDD1D

    def next_u64(self):
        x = self._state
        x ^= x >> 12
        x ^= (x << 25) & _MASK
        x ^= x >> 27
        self._state = x
        return (x * 0x2545F4914F6CDD1D) & _MASK

    def uniform(self, size=None, low=0.0, high=1.0):
        if size is None:
            return low + (high - low) * (self.next_u64() >> 11) * 2.0**-53
        n = int(np.prod(size))
        u = np.fromiter(((self.next_u64() >> 11) for _ in range(n)), dtype=np.float64, count=n)
        return (low + (high - low) * u * 2.0**-53).reshape(size)
