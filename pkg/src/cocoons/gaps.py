"""Gaps between consecutive odd composites and the primes they enclose.

Among any three consecutive odd numbers one is a multiple of 3, so above 9
two neighbouring odd composites are never more than 6 apart. The gap size
then says exactly what sits in between:

* gap 2: only an even number;
* gap 4: a single prime at the midpoint (an isolated prime);
* gap 6: the twin primes ``mid - 1`` and ``mid + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, TheoremViolation
from .tables import CocoonList

__all__ = [
    "CocoonPair",
    "ClassifiedGaps",
    "classify",
    "reconstruct_primes",
    "twin_pairs",
    "isolated_primes",
    "SMALL_PRIMES",
]

GAPS = (2, 4, 6)
SMALL_PRIMES = (2, 3, 5, 7)


class CocoonPair(NamedTuple):
    lo: int
    hi: int
    gap: int

    @property
    def midpoint(self) -> int:
        return (self.lo + self.hi) // 2


@dataclass(frozen=True, eq=False)
class ClassifiedGaps:
    """Adjacent cocoon pairs split by gap.

    Pairs are stored as arrays of their lower member; ``a2``, ``a4`` and
    ``a6`` materialise them as :class:`CocoonPair` lists on demand.
    ``m`` is the largest cocoon considered.
    """

    m: int
    limit: int
    n_cocoons: int
    lo2: np.ndarray
    lo4: np.ndarray
    lo6: np.ndarray

    def lows(self, gap: int) -> np.ndarray:
        try:
            return {2: self.lo2, 4: self.lo4, 6: self.lo6}[gap]
        except KeyError:
            raise DomainError(f"gap must be one of {GAPS}, got {gap}") from None

    def pairs(self, gap: int) -> list[CocoonPair]:
        return [CocoonPair(lo, lo + gap, gap) for lo in self.lows(gap).tolist()]

    @property
    def a2(self) -> list[CocoonPair]:
        return self.pairs(2)

    @property
    def a4(self) -> list[CocoonPair]:
        return self.pairs(4)

    @property
    def a6(self) -> list[CocoonPair]:
        return self.pairs(6)

    @property
    def counts(self) -> tuple[int, int, int]:
        """``(|A2|, |A4|, |A6|)``."""
        return len(self.lo2), len(self.lo4), len(self.lo6)


def classify(cocoons: CocoonList) -> ClassifiedGaps:
    """Partition every adjacent pair of cocoons by its gap.

    Raises :class:`TheoremViolation` on any gap outside {2, 4, 6}.
    """
    values = cocoons.values
    if len(values) == 0:
        raise DomainError("cannot classify an empty cocoon list")
    lo = values[:-1]
    diffs = np.diff(values)
    bad = np.flatnonzero((diffs != 2) & (diffs != 4) & (diffs != 6))
    if len(bad):
        i = int(bad[0])
        raise TheoremViolation(
            f"cocoons {int(values[i])} and {int(values[i + 1])} are {int(diffs[i])} apart; gaps must be 2, 4 or 6"
        )
    return ClassifiedGaps(
        m=int(values[-1]),
        limit=cocoons.limit,
        n_cocoons=len(values),
        lo2=lo[diffs == 2],
        lo4=lo[diffs == 4],
        lo6=lo[diffs == 6],
    )


def isolated_primes(classified: ClassifiedGaps) -> np.ndarray:
    return classified.lo4 + 2


def twin_pairs(classified: ClassifiedGaps) -> list[tuple[int, int]]:
    return [(p, p + 2) for p in (classified.lo6 + 2).tolist()]


def reconstruct_primes(classified: ClassifiedGaps) -> np.ndarray:
    """Primes up to the largest cocoon, read off the gap midpoints.

    2, 3, 5 and 7 precede the first cocoon and are added directly. When the
    classification's limit is itself a cocoon this is every prime <= limit.
    """
    twins = classified.lo6 + 2
    parts = [np.array(SMALL_PRIMES, dtype=np.int64), classified.lo4 + 2, twins, twins + 2]
    return np.sort(np.concatenate(parts))
