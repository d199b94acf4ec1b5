"""Seedable random number generation used throughout the package.

The generator is xoshiro256** seeded through the splitmix64 mixer (both
public-domain algorithms by Blackman and Vigna, with published reference
code).  They were chosen over a library RNG because every random choice in
this package must be reproducible bit for bit from a 64-bit seed in *both*
kernel backends: this module is the pure-Python reference, and
``satlab._core`` carries an independent C translation of the same routines.

Child seeds (per generation attempt, per instance, per solver run) are
derived with :func:`stream_seed`, which is the closed form of the i-th
splitmix64 output; batches are therefore reproducible at any worker count.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

_GOLDEN = 0x9E3779B97F4A7C15

# Role tags separating independent seed streams derived from one master seed.
ROLE_GENERATE = 1
ROLE_SLS_RUNS = 2
ROLE_POINT = 3


def mix64(z: int) -> int:
    """splitmix64 output mixer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def stream_seed(master: int, index: int) -> int:
    """index-th output of the splitmix64 stream seeded with ``master``."""
    return mix64((master + (index + 1) * _GOLDEN) & MASK64)


def role_seed(master: int, role: int) -> int:
    """Root seed for one role (generation, solver runs, ...) of a master seed."""
    return stream_seed(master, role)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256:
    """xoshiro256** stream with unbiased bounded integers and unit doubles."""

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed: int):
        state = seed & MASK64
        words = []
        for _ in range(4):
            state = (state + _GOLDEN) & MASK64
            words.append(mix64(state))
        self.s0, self.s1, self.s2, self.s3 = words

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, _rotl(s3, 45)
        return result

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound); bound=1 consumes no output."""
        if bound <= 1:
            if bound == 1:
                return 0
            raise ValueError("bound must be >= 1")
        rem = (1 << 64) % bound
        if rem == 0:
            return self.next_u64() % bound
        limit = (1 << 64) - rem
        while True:
            u = self.next_u64()
            if u < limit:
                return u % bound

    def unit(self) -> float:
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53
