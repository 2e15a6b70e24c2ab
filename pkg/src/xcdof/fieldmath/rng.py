"""Deterministic seeded randomness for channel and precoder draws.

Streams are derived from (seed, *stream coordinates) through a splitmix64
chain feeding a Philox counter generator, so independent trials can run
in any order (or in parallel) and still reproduce bit-identical draws.
"""

from __future__ import annotations

import numpy as np

from .matrix import FieldMatrix
from .primes import DEFAULT_PRIME

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_key(*parts: int) -> int:
    """Mix integer stream coordinates into a 128-bit Philox key."""
    acc = 0x243F6A8885A308D3
    for part in parts:
        acc = _splitmix64(acc ^ (int(part) & _MASK64))
    lo = _splitmix64(acc)
    hi = _splitmix64(lo)
    return (hi << 64) | lo


class FieldRng:
    """Uniform draws over F_p from a derived, order-independent stream."""

    def __init__(self, prime: int = DEFAULT_PRIME, *stream: int):
        self.prime = int(prime)
        self._gen = np.random.Generator(np.random.Philox(key=derive_key(*stream)))

    def matrix(self, rows: int, cols: int) -> FieldMatrix:
        data = self._gen.integers(0, self.prime, size=(rows, cols), dtype=np.uint64)
        return FieldMatrix(data, self.prime)


def random_matrix(rng: FieldRng, rows: int, cols: int) -> FieldMatrix:
    """Entries i.i.d. uniform over F_p; deterministic given the rng stream."""
    return rng.matrix(rows, cols)
