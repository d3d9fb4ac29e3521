"""Odd composite enumeration, gap classification and prime counting identities."""

__version__ = "0.1.0"

from .census import (
    CensusReport,
    CensusTable,
    IdentityCheck,
    IdentityReport,
    census,
    pi_from_parity,
    verify_identities,
    verify_range,
)
from .errors import CocoonError, DomainError, IdentityViolation, MemoryCapError, TheoremViolation
from .gaps import ClassifiedGaps, CocoonPair, classify, isolated_primes, reconstruct_primes, twin_pairs
from .oracle import SieveTable, oracle_odd_composites, oracle_twin_pairs, sieve_primes
from .scan import ScanRow, ScanSummary, iter_scan, s_values, scan
from .tables import CocoonList, ProductForm, enumerate_form, is_member, list_forms, odd_composites

__all__ = [
    "CensusReport", "CensusTable", "IdentityCheck", "IdentityReport",
    "census", "pi_from_parity", "verify_identities", "verify_range",
    "CocoonError", "DomainError", "IdentityViolation", "MemoryCapError", "TheoremViolation",
    "ClassifiedGaps", "CocoonPair", "classify", "isolated_primes", "reconstruct_primes", "twin_pairs",
    "SieveTable", "oracle_odd_composites", "oracle_twin_pairs", "sieve_primes",
    "ScanRow", "ScanSummary", "iter_scan", "s_values", "scan",
    "CocoonList", "ProductForm", "enumerate_form", "is_member", "list_forms", "odd_composites",
]  # fmt: skip
