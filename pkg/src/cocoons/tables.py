"""Odd composite enumeration from eleven last-digit product forms.

Every odd composite ``p`` factors as ``a * b`` with odd ``3 <= a <= b``.
Sorting the factor pairs by the last decimal digit of each factor gives
fifteen unordered digit pairs; the five involving a 5 collapse into the
single progression of odd multiples of 5, which leaves eleven forms:

=========  ===========================
last digit  factor digit pairs
=========  ===========================
1           1x1, 3x7, 9x9
3           1x3, 7x9
5           odd multiples of 5
7           1x7, 3x9
9           1x9, 3x3, 7x7
=========  ===========================

A factor ending in 1 starts at 11, so the unit factor is never used.

The union of the forms is recorded in a bit array over the odd numbers,
bit ``(p - 1) // 2`` for ``p``, which deduplicates the heavy overlap
between forms and gives constant-time membership.
"""

from __future__ import annotations

import os
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import isqrt
from pathlib import Path
from typing import Iterator

import numpy as np

from .errors import DomainError, MemoryCapError

__all__ = [
    "ProductForm",
    "CocoonList",
    "FORMS",
    "list_forms",
    "enumerate_form",
    "odd_composites",
    "is_member",
    "membership_bytes",
    "default_memory_cap",
    "DUMP_MAGIC",
    "DUMP_VERSION",
]

MIN_LIMIT = 9
MAX_DEFAULT_LIMIT = 2**31
MEMORY_CAP_ENV = "COCOON_MEMORY_CAP"

DUMP_MAGIC = b"COCN"
DUMP_VERSION = 1
_HEADER = struct.Struct("<4sIQ")


@dataclass(frozen=True)
class ProductForm:
    """Products ``(10*i + last_digit_a) * (10*j + last_digit_b)``.

    ``i >= min_index_a`` and ``j >= min_index_b``. The ``collapsed`` form
    stands for all odd multiples of 5 from 15 upward and ignores the index
    fields.
    """

    last_digit_a: int
    last_digit_b: int
    min_index_a: int
    min_index_b: int
    product_last_digit: int
    collapsed: bool = False

    def __post_init__(self):
        for d in (self.last_digit_a, self.last_digit_b, self.product_last_digit):
            if d not in (1, 3, 5, 7, 9):
                raise DomainError(f"last digit must be odd, got {d}")
        if (self.last_digit_a * self.last_digit_b) % 10 != self.product_last_digit:
            raise DomainError(f"{self.last_digit_a}x{self.last_digit_b} does not end in {self.product_last_digit}")
        if self.min_index_a != int(self.last_digit_a == 1) or self.min_index_b != int(self.last_digit_b == 1):
            raise DomainError("min index must be 1 exactly for factors ending in 1")

    @property
    def smallest_factor_a(self) -> int:
        return 10 * self.min_index_a + self.last_digit_a

    @property
    def smallest_factor_b(self) -> int:
        return 10 * self.min_index_b + self.last_digit_b

    @property
    def name(self) -> str:
        if self.collapsed:
            return "5*(2k+1)"
        return f"{self.last_digit_a}x{self.last_digit_b}"


def _form(a: int, b: int, collapsed: bool = False) -> ProductForm:
    return ProductForm(a, b, int(a == 1), int(b == 1), (a * b) % 10, collapsed)


FORMS: tuple[ProductForm, ...] = (
    _form(1, 1),
    _form(3, 7),
    _form(9, 9),
    _form(1, 3),
    _form(7, 9),
    _form(5, 5, collapsed=True),
    _form(1, 7),
    _form(3, 9),
    _form(1, 9),
    _form(3, 3),
    _form(7, 7),
)


def list_forms() -> tuple[ProductForm, ...]:
    """Return the eleven product forms, grouped by the product's last digit."""
    return FORMS


def default_memory_cap() -> int:
    """Byte budget for the membership bit array.

    Read from ``COCOON_MEMORY_CAP`` when set; otherwise enough for a limit
    of ``2**31``.
    """
    env = os.environ.get(MEMORY_CAP_ENV)
    if env:
        try:
            cap = int(env)
        except ValueError:
            raise DomainError(f"{MEMORY_CAP_ENV} must be an integer byte count, got {env!r}") from None
        if cap <= 0:
            raise DomainError(f"{MEMORY_CAP_ENV} must be positive, got {cap}")
        return cap
    return membership_bytes(MAX_DEFAULT_LIMIT)


def membership_bytes(limit: int) -> int:
    """Size in bytes of the packed bit array over odd numbers <= ``limit``."""
    return ((limit + 1) // 2 + 7) // 8


def _check_limit(limit) -> int:
    if isinstance(limit, bool) or not isinstance(limit, (int, np.integer)):
        raise DomainError(f"limit must be an integer, got {limit!r}")
    limit = int(limit)
    if limit < MIN_LIMIT:
        raise DomainError(f"limit must be at least {MIN_LIMIT}, got {limit}")
    return limit


def _align_up(x: int, digit: int) -> int:
    """Smallest integer >= x ending in ``digit``."""
    return x + (digit - x) % 10


def _align_down(x: int, digit: int) -> int:
    return x - (x - digit) % 10


def _progressions(form: ProductForm, limit: int) -> Iterator[tuple[int, int, int]]:
    """Yield ``(first, last, step)`` arithmetic runs covering the form's products.

    The smaller factor of each product is at most ``isqrt(limit)``; every run
    fixes that smaller factor ``f`` and steps the partner by 10, so the
    products advance by ``10 * f``.
    """
    if form.collapsed:
        if limit >= 15:
            yield 15, limit - (limit - 5) % 10, 10
        return

    root = isqrt(limit)
    da, db = form.last_digit_a, form.last_digit_b
    amin, bmin = form.smallest_factor_a, form.smallest_factor_b

    def runs(small_digit, small_min, big_digit, big_min):
        for f in range(small_min, root + 1, 10):
            lo = _align_up(max(f, big_min), big_digit)
            hi = _align_down(limit // f, big_digit)
            if lo <= hi:
                yield f * lo, f * hi, 10 * f

    yield from runs(da, amin, db, bmin)
    if da != db:
        yield from runs(db, bmin, da, amin)


def enumerate_form(form: ProductForm, limit: int) -> np.ndarray:
    """All products of one form that are <= ``limit``, sorted and unique.

    >>> enumerate_form(FORMS[6], 100).tolist()
    [77]
    """
    limit = _check_limit(limit)
    chunks = [np.arange(first, last + 1, step, dtype=np.int64) for first, last, step in _progressions(form, limit)]
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.unique(np.concatenate(chunks))


def _mark_form(bits: np.ndarray, form: ProductForm, limit: int) -> None:
    # product p = first + k*step sits at bit (p-1)//2, stepping by step//2
    for first, last, step in _progressions(form, limit):
        bits[(first - 1) // 2 : (last - 1) // 2 + 1 : step // 2] = True


@dataclass(frozen=True, eq=False)
class CocoonList:
    """Sorted odd composites up to ``limit`` plus their packed membership bits.

    Immutable after construction; ``membership`` is little-endian bit order,
    bit ``(p - 1) // 2`` set iff ``p`` is an odd composite.
    """

    limit: int
    values: np.ndarray
    membership: np.ndarray

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values.tolist())

    def __contains__(self, p) -> bool:
        return 1 <= p <= self.limit and is_member(self, p)

    def to_bytes(self) -> bytes:
        return _HEADER.pack(DUMP_MAGIC, DUMP_VERSION, self.limit) + self.membership.tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> CocoonList:
        if len(data) < _HEADER.size:
            raise DomainError("truncated cocoon dump header")
        magic, version, limit = _HEADER.unpack_from(data)
        if magic != DUMP_MAGIC:
            raise DomainError(f"bad magic {magic!r}")
        if version != DUMP_VERSION:
            raise DomainError(f"unsupported dump version {version}")
        limit = _check_limit(limit)
        payload = np.frombuffer(data, dtype=np.uint8, offset=_HEADER.size)
        if len(payload) != membership_bytes(limit):
            raise DomainError(f"expected {membership_bytes(limit)} payload bytes, got {len(payload)}")
        bits = np.unpackbits(payload, count=(limit + 1) // 2, bitorder="little").astype(bool)
        return cls(limit, _values_from_bits(bits), payload.copy())

    def dump(self, path) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def load(cls, path) -> CocoonList:
        return cls.from_bytes(Path(path).read_bytes())


def _values_from_bits(bits: np.ndarray) -> np.ndarray:
    return np.flatnonzero(bits).astype(np.int64) * 2 + 1


def odd_composites(limit: int, threads: int = 1, memory_cap: int | None = None) -> CocoonList:
    """Every odd composite <= ``limit``, built from the eleven forms.

    ``threads > 1`` fans the forms out to worker threads writing into one
    shared array. Each write only ever sets a bit, so the result does not
    depend on scheduling.
    """
    limit = _check_limit(limit)
    cap = default_memory_cap() if memory_cap is None else memory_cap
    need = membership_bytes(limit)
    if need > cap:
        raise MemoryCapError(f"limit {limit} needs {need} bytes of membership bits, cap is {cap}")

    bits = np.zeros((limit + 1) // 2, dtype=bool)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda f: _mark_form(bits, f, limit), FORMS))
    else:
        for form in FORMS:
            _mark_form(bits, form, limit)

    packed = np.packbits(bits, bitorder="little")
    return CocoonList(limit, _values_from_bits(bits), packed)


def is_member(cocoons: CocoonList, p: int) -> bool:
    """True iff ``p`` is an odd composite; ``p`` must not exceed the list's limit."""
    if p < 1:
        raise DomainError(f"p must be positive, got {p}")
    if p > cocoons.limit:
        raise DomainError(f"p={p} exceeds list limit {cocoons.limit}")
    if p % 2 == 0:
        return False
    i = (p - 1) // 2
    return bool((cocoons.membership[i >> 3] >> (i & 7)) & 1)
