import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import trial_factor, trial_gpf, trial_primes, trial_spf
from weakmult import sieve
from weakmult.errors import DomainError, EmptyRangeError, RangeError, UndefinedValueError


class TestPrimeTable:
    def test_small(self):
        assert sieve.build_prime_table(10).primes.tolist() == [2, 3, 5, 7]
        assert sieve.build_prime_table(2).primes.tolist() == [2]

    def test_million_matches_trial_division(self):
        table = sieve.build_prime_table(10**6)
        assert len(table) == 78498
        assert len(table) == len(trial_primes(10**6))

    def test_exact_contents(self):
        assert sieve.build_prime_table(10**4).primes.tolist() == trial_primes(10**4)

    def test_invariants(self):
        p = sieve.build_prime_table(50_000).primes
        assert p[0] == 2
        assert np.all(np.diff(p) > 0)
        assert all(sieve.is_prime(int(q)) for q in p[::97])

    @pytest.mark.parametrize("limit", [1, 0, -5])
    def test_empty(self, limit):
        with pytest.raises(EmptyRangeError):
            sieve.build_prime_table(limit)

    def test_read_only(self):
        with pytest.raises(ValueError):
            sieve.build_prime_table(100).primes[0] = 4


class TestIsPrime:
    def test_against_trial_division(self):
        ps = set(trial_primes(20_000))
        assert all(sieve.is_prime(n) == (n in ps) for n in range(20_001))

    @pytest.mark.parametrize(
        "n,expected",
        [
            (2**61 - 1, True),
            (2**64 - 59, True),  # largest 64-bit prime
            (3215031751, False),  # strong pseudoprime to bases 2, 3, 5, 7
            (3825123056546413051, False),  # strong pseudoprime to bases 2..23
            (4294967297, False),  # 641 * 6700417
        ],
    )
    def test_large(self, n, expected):
        assert sieve.is_prime(n) is expected


class TestFactorize:
    @pytest.mark.parametrize(
        "n,factors",
        [(360, [(2, 3), (3, 2), (5, 1)]), (1, []), (97, [(97, 1)]), (2**10, [(2, 10)])],
    )
    def test_examples(self, n, factors):
        assert list(sieve.factorize(n).factors) == factors

    def test_large_semiprime(self):
        p, q = 4294967291, 4294967279
        assert list(sieve.factorize(p * q).factors) == [(q, 1), (p, 1)]

    @given(st.integers(min_value=1, max_value=10**7))
    @settings(max_examples=300)
    def test_matches_trial_division(self, n):
        assert list(sieve.factorize(n).factors) == trial_factor(n)

    @given(st.lists(st.sampled_from([2, 3, 5, 7, 101, 65537, 2147483647]), min_size=0, max_size=5))
    def test_product_roundtrip(self, primes):
        n = math.prod(primes)
        assume(n < 2**64)
        f = sieve.factorize(n)
        assert f.value() == n
        assert sorted(primes) == [p for p, e in f.factors for _ in range(e)]

    def test_divisors(self):
        assert sieve.factorize(12).divisors() == [1, 2, 3, 4, 6, 12]

    def test_rejects(self):
        with pytest.raises(DomainError):
            sieve.factorize(0)
        with pytest.raises(DomainError):
            sieve.factorize(2**64)


def test_euler_phi():
    for n in range(1, 300):
        assert sieve.euler_phi(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


class TestFactorSieve:
    def test_examples(self):
        fs = sieve.build_factor_sieve(2, 101)
        assert fs.gpf(100) == 5
        assert fs.gpf(97) == 97
        assert sieve.build_factor_sieve(1, 2**10 + 1).gpf(2**10) == 2

    def test_exhaustive_small(self, small_sieve):
        gpf = small_sieve.gpf_array.tolist()
        spf = small_sieve.spf_array.tolist()
        for n in range(2, 10**5 + 1):
            assert gpf[n - 1] == trial_gpf(n)
            assert spf[n - 1] == trial_spf(n)

    def test_offset_range(self):
        lo, hi = 10**6, 10**6 + 10**4
        fs = sieve.build_factor_sieve(lo, hi)
        for n in range(lo, hi):
            assert fs.gpf(n) == trial_gpf(n)
            assert fs.spf(n) == trial_spf(n)

    def test_sampled_large(self):
        rng = random.Random(7)
        lo = 10**8
        fs = sieve.build_factor_sieve(lo, lo + 50_000, segment_size=4096)
        for n in rng.sample(range(lo, lo + 50_000), 500):
            assert fs.gpf(n) == trial_gpf(n)

    @pytest.mark.parametrize("segment_size", [1, 7, 1000, 1 << 20])
    def test_segmentation_invariant(self, segment_size, small_sieve):
        fs = sieve.build_factor_sieve(3, 5000, segment_size=segment_size)
        assert np.array_equal(fs.gpf_array, small_sieve.gpf_array[2:4999])
        assert np.array_equal(fs.spf_array, small_sieve.spf_array[2:4999])

    def test_threads_do_not_change_result(self):
        a = sieve.build_factor_sieve(1, 300_000, segment_size=10_000, threads=1)
        b = sieve.build_factor_sieve(1, 300_000, segment_size=10_000, threads=4)
        assert np.array_equal(a.gpf_array, b.gpf_array)
        assert np.array_equal(a.spf_array, b.spf_array)

    def test_structural_invariants(self, small_sieve):
        n = small_sieve.numbers()[1:]
        g = small_sieve.gpf_array[1:]
        s = small_sieve.spf_array[1:]
        assert np.all(s <= g)
        assert np.all(n % g == 0) and np.all(n % s == 0)
        cof = n // g
        # cofactor's largest prime factor never exceeds gpf(n)
        cof_gpf = np.where(cof > 1, small_sieve.gpf_array[np.maximum(cof, 1) - 1], 0)
        assert np.all(cof_gpf <= g)
        primes = sieve.primes_up_to(10**5)
        assert np.array_equal(small_sieve.gpf_array[primes - 1], primes)

    def test_errors(self):
        fs = sieve.build_factor_sieve(1, 50)
        with pytest.raises(UndefinedValueError):
            fs.gpf(1)
        with pytest.raises(RangeError):
            fs.gpf(50)
        with pytest.raises(RangeError):
            sieve.build_factor_sieve(10, 10)
        with pytest.raises(RangeError):
            sieve.build_factor_sieve(0, 10)


class TestProgressions:
    @pytest.mark.parametrize(
        "x,q,a,expected",
        [(100, 3, 1, 11), (100, 4, 1, 11), (10, 2, 0, 1), (100, 1, 0, 25), (100, 6, 3, 1), (100, 10, 5, 1)],
    )
    def test_counts(self, x, q, a, expected):
        assert sieve.prime_count_progression(x, q, a) == expected

    @given(st.integers(2, 20_000), st.integers(1, 60))
    @settings(max_examples=100)
    def test_residues_partition_primes(self, x, q):
        coprime = sum(sieve.prime_count_progression(x, q, a) for a in range(q) if math.gcd(a, q) == 1)
        pi_x = len(sieve.primes_up_to(x))
        dividing_q = sum(1 for p in sieve.primes_up_to(x).tolist() if q % p == 0)
        assert coprime == pi_x - dividing_q

    def test_bad_args(self):
        with pytest.raises(DomainError):
            sieve.prime_count_progression(100, 3, 3)

    def test_mertens_small(self):
        assert sieve.mertens_progression_sum(10, 1) == pytest.approx(1 / 2 + 1 / 3 + 1 / 5 + 1 / 7, abs=1e-15)
        listed = [7, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97]
        exact = float(sum(Fraction(1, p) for p in listed))
        assert sieve.mertens_progression_sum(100, 3) == exact

    def test_mertens_increment(self):
        diff = sieve.mertens_progression_sum(10**6, 3) - sieve.mertens_progression_sum(10**5, 3)
        predicted = math.log(math.log(10**6) / math.log(10**5)) / 2
        assert abs(diff - predicted) <= 0.03

    def test_brun_titchmarsh_grid(self):
        rep = sieve.brun_titchmarsh_check([10**3, 10**4, 10**5], qmax=100)
        assert rep.entries and rep.ok
        # q=1 reduces to pi(x) <= 2x/log x
        e = next(e for e in rep.entries if e.x == 10**4 and e.q == 1)
        assert e.count == 1229

    def test_brun_titchmarsh_needs_q_below_x(self):
        with pytest.raises(DomainError):
            sieve.brun_titchmarsh_bound(10, 10)
