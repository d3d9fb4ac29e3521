import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import brute
from cocoons.census import (
    IDENTITY_NAMES,
    CensusReport,
    CensusTable,
    census,
    pi_from_parity,
    valid_thresholds,
    verify_identities,
    verify_range,
)
from cocoons.errors import DomainError, IdentityViolation
from cocoons.oracle import oracle_odd_composites, sieve_primes


def counts(r):
    return (r.t, r.a2, r.a4, r.a6, r.pi)


class TestCensus:
    def test_9(self):
        assert counts(census(9)) == (1, 0, 0, 0, 4)

    def test_15(self):
        assert counts(census(15)) == (2, 0, 0, 1, 6)

    def test_27(self):
        assert counts(census(27)) == (5, 1, 1, 2, 9)

    @pytest.mark.parametrize("m", [3, 8, 12, 21 + 1, 25, 27 + 2])
    def test_rejects_invalid_m(self, m):
        with pytest.raises(DomainError, match=r"3\(2n\+1\)"):
            census(m)

    def test_rejects_non_integer(self):
        with pytest.raises(DomainError):
            census(15.0)

    def test_brute_counts(self):
        for m in range(9, 400, 6):
            composites = brute.odd_composites(m)
            gaps = np.diff(composites).tolist()
            r = census(m)
            assert r.t == len(composites)
            assert (r.a2, r.a4, r.a6) == (gaps.count(2), gaps.count(4), gaps.count(6))
            assert r.pi == len(brute.primes(m))

    def test_violation_raised(self):
        bad = CensusReport(m=15, t=2, a2=0, a4=0, a6=1, pi=7)
        with pytest.raises(IdentityViolation) as exc:
            bad.check()
        assert exc.value.name == "prime_count"

    def test_table_matches_fresh(self):
        table = CensusTable.build(5001)
        for m in [9, 15, 105, 999, 2001, 4995, 4995 + 6]:
            assert table.report(m) == census(m)

    def test_table_rejects_beyond_limit(self):
        with pytest.raises(DomainError):
            CensusTable.build(99).report(105)


class TestParity:
    def test_examples(self):
        assert pi_from_parity(10, 1) == 4
        assert pi_from_parity(9, 1) == 4
        assert pi_from_parity(2, 0) == 1

    def test_rejects_one(self):
        with pytest.raises(DomainError):
            pi_from_parity(1, 0)

    def test_both_parities_small(self):
        for n in range(2, 500):
            t = len(brute.odd_composites(n)) if n >= 9 else 0
            assert pi_from_parity(n, t) == len(brute.primes(n))


class TestVerify:
    def test_15_with_oracle(self):
        r = verify_identities(15, use_oracle=True)
        assert r.passed
        assert r.oracle_pi == 6 and r.oracle_match
        assert [c.name for c in r.checks] == list(IDENTITY_NAMES)

    def test_9_without_oracle(self):
        r = verify_identities(9, use_oracle=False)
        assert r.passed and r.oracle_pi is None
        twin = dict((c.name, c) for c in r.checks)["twin_balance"]
        assert (twin.left, twin.right) == (7, 9 - 2 * (1 + 0))

    def test_999999(self, sieve_1e6):
        r = verify_identities(999999, use_oracle=True)
        assert r.passed and r.oracle_match
        assert r.oracle_pi == r.census.pi == sieve_1e6.pi(999999)

    def test_range_small(self):
        reports = verify_range(99)
        assert [r.m for r in reports] == list(range(9, 100, 6))
        assert all(r.passed for r in reports)

    def test_range_matches_single(self):
        reports = {r.m: r for r in verify_range(3003)}
        for m in [9, 15, 333, 3003]:
            assert reports[m] == verify_identities(m)

    def test_range_rejects_small(self):
        with pytest.raises(DomainError):
            verify_range(8)

    def test_derivation_consistency(self):
        for r in CensusTable.build(10**5).reports():
            assert r.t == (r.m - 7) // 2 - 2 * r.a6 - r.a4


def test_valid_thresholds():
    assert valid_thresholds(99).tolist() == list(range(9, 100, 6))
    assert len(valid_thresholds(99)) == 16


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=10**6 // 6 - 1))
def test_identities_exact_property(n):
    m = 3 * (2 * n + 1)
    r = census(m)
    assert r.pi == sieve_primes(m).pi(m)


def test_parity_against_oracle_sampled():
    table = sieve_primes(10**5)
    composites = oracle_odd_composites(10**5, table)
    ns = np.arange(2, 10**5 + 1)
    t = np.searchsorted(composites, ns, side="right")
    pis = table.pi(ns)
    for n, tn, pn in zip(ns.tolist()[::97], t.tolist()[::97], pis.tolist()[::97]):
        assert pi_from_parity(n, tn) == pn
