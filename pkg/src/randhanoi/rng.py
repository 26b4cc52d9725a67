"""Counter-based random streams for reproducible, partitionable simulation.

Every draw is a pure function of (master_seed, trial index, draw index):

    mix64(z)        = SplitMix64 finalizer (Stafford variant 13):
                      z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
                      z ^= z >> 27; z *= 0x94D049BB133111EB
                      z ^= z >> 31
    stream_key(s, i) = mix64(s + (i + 1) * GAMMA)
    draw(key, j)     = mix64(key + (j + 1) * GAMMA)

with GAMMA = 0x9E3779B97F4A7C15 and all arithmetic mod 2**64.  In other
words trial i uses the i-th SplitMix64 output of the master seed as its own
SplitMix64 seed.  A choice among k options takes the high 32 bits h of a
draw, forms m = h * k and rejects the draw when (m mod 2**32) < 2**32 mod k
(Lemire's method), so every option has probability exactly 1/k; otherwise
the option is m >> 32.
"""
from __future__ import annotations

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def stream_key(master_seed: int, trial: int) -> int:
    return mix64(master_seed + (trial + 1) * GAMMA)


class TrialStream:
    """Scalar random stream of one trial."""

    def __init__(self, master_seed: int, trial: int):
        self.key = stream_key(master_seed, trial)
        self.counter = 0

    def next_u64(self) -> int:
        self.counter += 1
        return mix64(self.key + self.counter * GAMMA)

    def choice(self, k: int) -> int:
        """Uniform integer in [0, k)."""
        threshold = (1 << 32) % k
        while True:
            m = (self.next_u64() >> 32) * k
            if (m & 0xFFFFFFFF) >= threshold:
                return m >> 32


# -- vectorised counterparts (uint64 arrays wrap modulo 2**64) ---------------

_GAMMA_U = np.uint64(GAMMA)
_M1_U = np.uint64(_M1)
_M2_U = np.uint64(_M2)


def mix64_array(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> np.uint64(30))
    z = z * _M1_U
    z = z ^ (z >> np.uint64(27))
    z = z * _M2_U
    return z ^ (z >> np.uint64(31))


def stream_keys(master_seed: int, trials: np.ndarray) -> np.ndarray:
    base = np.uint64(master_seed & MASK64)
    return mix64_array(base + (trials.astype(np.uint64) + np.uint64(1)) * _GAMMA_U)


def draw_array(keys: np.ndarray, counters: np.ndarray) -> np.ndarray:
    """Draw number ``counters`` (1-based) of each stream."""
    return mix64_array(keys + counters.astype(np.uint64) * _GAMMA_U)


def choice_array(u: np.ndarray, k: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Lemire choice in [0, k) for each draw; returns (choice, accepted)."""
    k = k.astype(np.uint64)
    m = (u >> np.uint64(32)) * k
    threshold = (np.uint64(1) << np.uint64(32)) % k
    accepted = (m & np.uint64(0xFFFFFFFF)) >= threshold
    return (m >> np.uint64(32)).astype(np.int64), accepted
