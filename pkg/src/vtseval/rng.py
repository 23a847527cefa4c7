"""Deterministic pseudo-randomness pinned to splitmix64.

Every seeded operation in the package draws from this generator so that
identical seeds give identical results regardless of platform or Python
version. Bounded draws use plain modulo and floats use the top 53 bits;
both conventions are part of the pinned behaviour, not implementation
details.
"""
from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """splitmix64 generator (Steele, Lea & Flood's mixing constants)."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return (z ^ (z >> 31)) & _MASK64

    def next_below(self, n: int) -> int:
        """Integer in [0, n). Modulo draw; bias is irrelevant for reproducibility."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n

    def next_float(self) -> float:
        """Float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, high index down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.next_below(i + 1)
            items[i], items[j] = items[j], items[i]


def sample_indices(m: int, n: int, rng: SplitMix64) -> list[int]:
    """n distinct indices from range(m), drawn by shuffle, returned ascending."""
    if n > m:
        raise ValueError(f"cannot draw {n} distinct indices from {m}")
    pool = list(range(m))
    rng.shuffle(pool)
    return sorted(pool[:n])
