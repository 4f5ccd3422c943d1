"""Counter-based 64-bit random streams.

Every random draw is a pure function of ``(master seed, stream words...)``,
so the value a node or trial receives never depends on generation order.

The mixer is splitmix64's output function ``sm64``::

    sm64(z):  z = z + 0x9E3779B97F4A7C15
              z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
              z = (z ^ (z >> 27)) * 0x94D049BB133111EB
              return z ^ (z >> 31)            (all arithmetic mod 2**64)

    mix(master, w1, ..., wk) = sm64(... sm64(sm64(master) ^ w1) ... ^ wk)

A uniform double in [0, 1) is ``(mix(...) >> 11) * 2**-53``.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)

# stream tags, one per consumer of randomness
TAG_SHORTCUT = 1
TAG_REWIRE = 2
TAG_KLEINBERG = 3
TAG_NAVIGABLE = 4
TAG_PAIR = 5
TAG_TRIAL = 6


def _as_u64(x) -> np.ndarray:
    if isinstance(x, (int, np.integer)):
        return np.asarray(int(x) & MASK64, dtype=np.uint64)
    return np.asarray(x).astype(np.uint64)


def sm64(z):
    z = _as_u64(z)
    with np.errstate(over="ignore"):
        z = z + _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def mix(master, *words):
    """Hash a master seed and stream words; broadcasts over array words."""
    h = sm64(master)
    for w in words:
        h = sm64(h ^ _as_u64(w))
    return h


def mix_int(master: int, *words: int) -> int:
    """Scalar ``mix`` returned as a Python int (used to derive child seeds)."""
    return int(mix(master, *words))


def uniform(master, *words) -> np.ndarray:
    """Uniform doubles in [0, 1), one per broadcast element of ``words``."""
    return (mix(master, *words) >> np.uint64(11)).astype(np.float64) * (2.0 ** -53)


def randbelow(m, master, *words) -> np.ndarray:
    """Uniform integers in [0, m); ``m`` may be an array broadcast with ``words``."""
    u = uniform(master, *words)
    return np.minimum((u * m).astype(np.int64), np.asarray(m, dtype=np.int64) - 1)
