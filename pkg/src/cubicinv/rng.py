"""SplitMix64: a small, fully specified 64-bit generator.

State advances by the golden-ratio increment ``0x9E3779B97F4A7C15``; each
output is the state passed through the finalizer::

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

all modulo 2**64. Any language with 64-bit unsigned arithmetic reproduces
the same stream for the same seed.
"""
from __future__ import annotations

from fractions import Fraction

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Independent child seed for trial ``index`` of an experiment seeded with ``seed``."""
    return mix64((seed & MASK64) + (index + 1) * GOLDEN_GAMMA)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def bernoulli(self, p: Fraction) -> bool:
        """True with probability ``p`` (resolution 2**-64).

        Always consumes exactly one draw, whatever ``p`` is.
        """
        return self.next_u64() * p.denominator < p.numerator << 64

    def choice(self, pool):
        return pool[self.below(len(pool))]
