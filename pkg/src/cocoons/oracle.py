"""Reference sieve used only to check the table-driven enumeration.

Deliberately plain: an odd-only sieve of Eratosthenes crossing off
multiples of each odd prime from its square. Nothing here imports from
:mod:`cocoons.tables`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import isqrt

import numpy as np

from .errors import DomainError

__all__ = ["SieveTable", "sieve_primes", "oracle_odd_composites", "oracle_twin_pairs"]


@dataclass(frozen=True, eq=False)
class SieveTable:
    """Primality flags for ``2..limit``.

    ``odd_flags[i]`` is the flag for ``2*i + 1``; 2 is handled separately.
    """

    limit: int
    odd_flags: np.ndarray

    def is_prime(self, n: int) -> bool:
        if n < 0 or n > self.limit:
            raise DomainError(f"{n} outside sieve range 0..{self.limit}")
        if n == 2:
            return True
        if n % 2 == 0:
            return False
        return bool(self.odd_flags[n // 2])

    @cached_property
    def prime_values(self) -> np.ndarray:
        odd = np.flatnonzero(self.odd_flags).astype(np.int64) * 2 + 1
        return np.concatenate([np.array([2], dtype=np.int64), odd])

    def primes(self) -> np.ndarray:
        return self.prime_values

    @property
    def count(self) -> int:
        return len(self.prime_values)

    def pi(self, n):
        """Number of primes <= n; ``n`` may be a scalar or an array."""
        counts = np.searchsorted(self.prime_values, n, side="right")
        return counts if np.ndim(counts) else int(counts)


def sieve_primes(limit: int) -> SieveTable:
    if limit < 2:
        raise DomainError(f"sieve limit must be at least 2, got {limit}")
    flags = np.ones((limit + 1) // 2, dtype=bool)
    flags[0] = False  # 1
    for i in range(1, isqrt(limit) // 2 + 1):
        if flags[i]:
            p = 2 * i + 1
            flags[p * p // 2 :: p] = False
    return SieveTable(limit, flags)


def oracle_odd_composites(limit: int, table: SieveTable | None = None) -> np.ndarray:
    """Odd numbers in ``9..limit`` that the sieve marks as not prime."""
    if limit < 9:
        raise DomainError(f"limit must be at least 9, got {limit}")
    if table is None or table.limit < limit:
        table = sieve_primes(limit)
    odds = np.arange(1, limit + 1, 2, dtype=np.int64)
    flags = table.odd_flags[: len(odds)]
    return odds[(~flags) & (odds >= 9)]


def oracle_twin_pairs(limit: int, table: SieveTable | None = None) -> list[tuple[int, int]]:
    """All ``(p, p + 2)`` with both prime and ``p + 2 <= limit``."""
    if limit < 5:
        raise DomainError(f"limit must be at least 5, got {limit}")
    if table is None or table.limit < limit:
        table = sieve_primes(limit)
    primes = table.primes()
    primes = primes[primes <= limit]
    lower = primes[:-1][np.diff(primes) == 2]
    return [(int(p), int(p) + 2) for p in lower]
