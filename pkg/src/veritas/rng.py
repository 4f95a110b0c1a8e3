"""Deterministic pseudorandom numbers: splitmix64 seeding + xoshiro256**.

Both generators follow the published reference algorithms, so any
implementation in any language that follows the same recipes reproduces
identical sequences.  Everything seeded in this package (splits, bootstrap
draws, per-split feature subsets, SMO pair picks) flows through here; the
process-global RNGs of numpy/random are never used by library code.

Conventions fixed for reproducibility:
  * bounded draw: ``next_u64() % n``
  * shuffle: Fisher-Yates, descending index, ``j = below(i + 1)``
  * k-th derived seed of ``s``: splitmix64 output at index k, i.e.
    ``mix64(s + (k + 1) * GOLDEN)``
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    # splitmix64 output scrambler
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


def splitmix64_at(seed: int, index: int) -> int:
    """Output number ``index`` (0-based) of the splitmix64 stream for ``seed``."""
    if index < 0:
        raise ValueError("index must be >= 0")
    return _mix64((seed + (index + 1) * _GOLDEN) & _MASK64)


def derive_seed(seed: int, index: int) -> int:
    """Stable sub-seed ``index`` of ``seed`` (per-label, per-tree, ...)."""
    return splitmix64_at(seed, index)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Xoshiro256StarStar:
    """xoshiro256** seeded from four successive splitmix64 outputs."""

    __slots__ = ("_s",)

    def __init__(self, seed: int):
        self._s = [splitmix64_at(seed & _MASK64, i) for i in range(4)]
        # all-zero state would be absorbing; splitmix64 cannot produce it
        # from four successive outputs, so no escape hatch is needed

    def next_u64(self) -> int:
        s = self._s
        result = (_rotl((s[1] * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s[1] << 17) & _MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n

    def next_float(self) -> float:
        """Float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_indices(self, n: int, k: int) -> list[int]:
        """k distinct indices from range(n), returned sorted ascending."""
        if not 0 <= k <= n:
            raise ValueError("need 0 <= k <= n")
        pool = list(range(n))
        for i in range(k):
            j = i + self.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return sorted(pool[:k])

    def bootstrap_indices(self, n: int) -> list[int]:
        """n draws with replacement from range(n)."""
        return [self.below(n) for _ in range(n)]
