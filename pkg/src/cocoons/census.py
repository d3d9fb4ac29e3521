"""Counting identities at thresholds ``m = 3(2n + 1)``.

For such ``m`` (an odd multiple of 3, hence itself a cocoon) the gap
counts ``|A2|, |A4|, |A6|`` and the cocoon count ``T(m)`` determine the
number of primes, the number of even numbers and the number of odd
numbers up to ``m``. :func:`verify_identities` evaluates all of these as
exact integer equalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .errors import DomainError, IdentityViolation
from .gaps import classify, reconstruct_primes
from .oracle import SieveTable, sieve_primes
from .tables import CocoonList, odd_composites

__all__ = [
    "CensusReport",
    "IdentityCheck",
    "IdentityReport",
    "CensusTable",
    "IDENTITY_NAMES",
    "census",
    "check_m",
    "valid_thresholds",
    "pi_from_parity",
    "verify_identities",
    "verify_range",
]

M_FORM_MESSAGE = "m must equal 3(2n+1), n >= 1"

IDENTITY_NAMES = (
    "cocoon_count",  # T = 1 + |A2| + |A4| + |A6|
    "prime_count",  # pi = 4 + |A4| + 2|A6|
    "gap2_count",  # |A2| = (m-9)/2 - 3|A6| - 2|A4|
    "even_count",  # (m+1)/2 = 5 + 3|A6| + 2|A4| + |A2|
    "odd_count",  # pi + T = (m+1)/2
    "twin_balance",  # 4|A6| + 7 = m - 2(T + |A4|)
    "isolated_balance",  # 2|A4| + 7 = m - 2(T + 2|A6|)
)


def check_m(m) -> int:
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
        raise DomainError(f"{M_FORM_MESSAGE}; got {m!r}")
    m = int(m)
    if m < 9 or m % 6 != 3:
        raise DomainError(f"{M_FORM_MESSAGE}; got {m}")
    return m


def valid_thresholds(limit: int) -> np.ndarray:
    """All ``m = 9, 15, 21, ...`` up to ``limit``."""
    return np.arange(9, limit + 1, 6, dtype=np.int64)


class IdentityCheck(NamedTuple):
    name: str
    left: int
    right: int

    @property
    def passed(self) -> bool:
        return self.left == self.right


@dataclass(frozen=True)
class CensusReport:
    m: int
    t: int
    a2: int
    a4: int
    a6: int
    pi: int

    def identities(self) -> tuple[IdentityCheck, ...]:
        m, t, a2, a4, a6, pi = self.m, self.t, self.a2, self.a4, self.a6, self.pi
        half = (m + 1) // 2
        return (
            IdentityCheck("cocoon_count", t, 1 + a2 + a4 + a6),
            IdentityCheck("prime_count", pi, 4 + a4 + 2 * a6),
            IdentityCheck("gap2_count", a2, (m - 9) // 2 - 3 * a6 - 2 * a4),
            IdentityCheck("even_count", half, 5 + 3 * a6 + 2 * a4 + a2),
            IdentityCheck("odd_count", pi + t, half),
            IdentityCheck("twin_balance", 4 * a6 + 7, m - 2 * (t + a4)),
            IdentityCheck("isolated_balance", 2 * a4 + 7, m - 2 * (t + 2 * a6)),
        )

    def check(self) -> CensusReport:
        """Return self, or raise :class:`IdentityViolation` on the first failing identity."""
        for ident in self.identities():
            if not ident.passed:
                raise IdentityViolation(self.m, ident.name, ident.left, ident.right)
        return self


@dataclass(frozen=True)
class IdentityReport:
    m: int
    checks: tuple[IdentityCheck, ...]
    oracle_pi: int | None = None
    oracle_match: bool | None = None
    census: CensusReport | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks) and self.oracle_match is not False

    @property
    def failures(self) -> list[str]:
        names = [c.name for c in self.checks if not c.passed]
        if self.oracle_match is False:
            names.append("oracle")
        return names


class CensusTable:
    """Census values for every valid ``m`` up to one enumeration limit.

    One cocoon enumeration at the top limit; per-``m`` counts come from
    binary searches over the cocoons and over the upper ends of each gap
    class.
    """

    def __init__(self, cocoons: CocoonList):
        self.cocoons = cocoons
        self.classified = classify(cocoons)
        c = self.classified
        self._his = (c.lo2 + 2, c.lo4 + 4, c.lo6 + 6)

    @classmethod
    def build(cls, limit: int, threads: int = 1, memory_cap: int | None = None) -> CensusTable:
        return cls(odd_composites(limit, threads=threads, memory_cap=memory_cap))

    @property
    def limit(self) -> int:
        return self.cocoons.limit

    def counts(self, ms) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """``(T, |A2|, |A4|, |A6|)`` evaluated at each threshold in ``ms``."""
        ms = np.asarray(ms, dtype=np.int64)
        if ms.size and ms.max() > self.limit:
            raise DomainError(f"threshold {int(ms.max())} beyond table limit {self.limit}")
        t = np.searchsorted(self.cocoons.values, ms, side="right")
        a2, a4, a6 = (np.searchsorted(h, ms, side="right") for h in self._his)
        return t, a2, a4, a6

    def reports(self, ms=None) -> Iterator[CensusReport]:
        """Unchecked reports for ``ms`` (default: every valid threshold)."""
        ms = valid_thresholds(self.limit) if ms is None else np.asarray(ms, dtype=np.int64)
        t, a2, a4, a6 = self.counts(ms)
        pi = 4 + a4 + 2 * a6
        for row in zip(ms.tolist(), t.tolist(), a2.tolist(), a4.tolist(), a6.tolist(), pi.tolist()):
            yield CensusReport(*row)

    def report(self, m: int) -> CensusReport:
        return next(self.reports([check_m(m)]))


def _census_unchecked(m: int, threads: int = 1, memory_cap: int | None = None) -> CensusReport:
    m = check_m(m)
    return CensusTable.build(m, threads=threads, memory_cap=memory_cap).report(m)


def census(m: int, threads: int = 1, memory_cap: int | None = None) -> CensusReport:
    """Cocoon and gap counts at ``m``, with pi from the gap counts.

    >>> census(27)
    CensusReport(m=27, t=5, a2=1, a4=1, a6=2, pi=9)
    """
    return _census_unchecked(m, threads, memory_cap).check()


def pi_from_parity(n: int, t: int) -> int:
    """Prime count up to ``n`` from the count ``t`` of odd composites up to ``n``.

    Every odd number other than 1 is prime or an odd composite, and 2 is the
    only even prime, so the count is ``(n + 1) // 2 - t`` for odd ``n`` and
    ``n // 2 - t`` for even ``n``. Undefined below 2, where 1 would be
    counted as a prime.
    """
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    return (n + 1) // 2 - t if n % 2 else n // 2 - t


def verify_identities(
    m: int, use_oracle: bool = True, threads: int = 1, memory_cap: int | None = None
) -> IdentityReport:
    """Evaluate every identity at ``m`` without raising on failure.

    With ``use_oracle`` the gap-derived pi and the reconstructed prime set
    are also compared with an independent sieve.
    """
    m = check_m(m)
    table = CensusTable.build(m, threads=threads, memory_cap=memory_cap)
    report = table.report(m)
    if not use_oracle:
        return IdentityReport(m, report.identities(), census=report)
    sieve = sieve_primes(m)
    oracle_pi = sieve.pi(m)
    rebuilt = reconstruct_primes(table.classified)
    match = report.pi == oracle_pi and np.array_equal(rebuilt, sieve.primes())
    return IdentityReport(m, report.identities(), oracle_pi, bool(match), report)


def verify_range(
    limit: int,
    use_oracle: bool = True,
    threads: int = 1,
    memory_cap: int | None = None,
    table: CensusTable | None = None,
    sieve: SieveTable | None = None,
) -> list[IdentityReport]:
    """Identity reports for every valid ``m <= limit``, from one enumeration.

    Reconstruction is checked once at the largest valid ``m``; since the
    gap pairs up to any smaller ``m`` are a prefix of the full list, each
    per-``m`` oracle match then reduces to comparing prime counts.
    """
    if limit < 9:
        raise DomainError(f"limit must be at least 9, got {limit}")
    ms = valid_thresholds(limit)
    top = int(ms[-1])
    if table is None:
        table = CensusTable.build(top, threads=threads, memory_cap=memory_cap)
    reports = list(table.reports(ms))
    if not use_oracle:
        return [IdentityReport(r.m, r.identities(), census=r) for r in reports]

    if sieve is None or sieve.limit < top:
        sieve = sieve_primes(top)
    oracle_primes = sieve.primes()
    oracle_primes = oracle_primes[oracle_primes <= top]
    rebuilt = reconstruct_primes(table.classified)
    rebuilt = rebuilt[rebuilt <= top]
    prefix_ok = np.array_equal(rebuilt, oracle_primes)
    oracle_pi = sieve.pi(ms).tolist()
    return [
        IdentityReport(r.m, r.identities(), opi, bool(prefix_ok and opi == r.pi), r)
        for r, opi in zip(reports, oracle_pi)
    ]
