"""Prime tables, largest/smallest prime factor sieves and progression counts.

All tables are numpy arrays marked read-only once built, so they can be
shared freely between threads.
"""
from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import DomainError, EmptyRangeError, RangeError, UndefinedValueError

DEFAULT_SEGMENT_SIZE = 1 << 20
UINT64_LIMIT = 1 << 64

# Deterministic for every n < 3.3e24, in particular for all 64-bit n.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _eratosthenes(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


_prime_cache = np.zeros(0, dtype=np.int64)
_prime_cache_limit = 1
_prime_cache_lock = threading.Lock()


def primes_up_to(limit: int) -> np.ndarray:
    """Read-only int64 array of primes <= limit, served from a growing cache."""
    global _prime_cache, _prime_cache_limit
    limit = int(limit)
    if limit > _prime_cache_limit:
        with _prime_cache_lock:
            if limit > _prime_cache_limit:
                new_limit = max(limit, 2 * _prime_cache_limit, 1 << 16)
                _prime_cache = _readonly(_eratosthenes(new_limit))
                _prime_cache_limit = new_limit
    cache = _prime_cache
    return cache[: np.searchsorted(cache, limit, side="right")]


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes.tolist())

    def __contains__(self, n) -> bool:
        i = np.searchsorted(self.primes, n)
        return bool(i < len(self.primes) and self.primes[i] == n)


def build_prime_table(limit: int) -> PrimeTable:
    if limit < 2:
        raise EmptyRangeError(f"no primes <= {limit}")
    return PrimeTable(int(limit), primes_up_to(limit))


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 2**64."""
    n = int(n)
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    if n >= UINT64_LIMIT:
        raise DomainError("primality is only certified below 2**64")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# factorization


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)

    def value(self) -> int:
        return math.prod(p**e for p, e in self.factors)


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n."""
    for c in range(1, 200):
        y, m, g, r, q = 2, 64, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard rho failed on {n}")


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> Factorization:
    n = int(n)
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    if n >= UINT64_LIMIT:
        raise DomainError("factorize is restricted to 64-bit integers")
    out: dict[int, int] = {}
    m = n
    for p in primes_up_to(1000).tolist():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
    _split(m, out)
    return Factorization(n, tuple(sorted(out.items())))


def euler_phi(n: int) -> int:
    phi = int(n)
    for p, _ in factorize(n).factors:
        phi -= phi // p
    return phi


# ---------------------------------------------------------------------------
# largest / smallest prime factor sieve


@dataclass(frozen=True)
class FactorSieve:
    """Largest (``gpf``) and smallest (``spf``) prime factor of each n in [lo, hi).

    The entry for n = 1 is stored as 0; querying it raises.
    """

    lo: int
    hi: int
    gpf_array: np.ndarray = field(repr=False)
    spf_array: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return self.hi - self.lo

    def _index(self, n: int) -> int:
        n = int(n)
        if not self.lo <= n < self.hi:
            raise RangeError(f"{n} outside sieve range [{self.lo}, {self.hi})")
        if n == 1:
            raise UndefinedValueError("1 has no prime divisor")
        return n - self.lo

    def gpf(self, n: int) -> int:
        return int(self.gpf_array[self._index(n)])

    def spf(self, n: int) -> int:
        return int(self.spf_array[self._index(n)])

    def numbers(self) -> np.ndarray:
        return np.arange(self.lo, self.hi, dtype=np.int64)


def _sieve_segment(lo: int, hi: int) -> FactorSieve:
    length = hi - lo
    n = np.arange(lo, hi, dtype=np.int64)
    rem = n.copy()
    gpf = np.zeros(length, dtype=np.int64)
    spf = np.zeros(length, dtype=np.int64)
    top = hi - 1
    for p in primes_up_to(math.isqrt(top)).tolist():
        start = -lo % p
        if start >= length:
            continue
        gpf[start::p] = p
        view = spf[start::p]
        view[view == 0] = p
        pk = p
        while pk <= top:
            st = -lo % pk
            if st >= length:
                break
            rem[st::pk] //= p
            pk *= p
    # whatever survives is a single prime above sqrt(hi)
    big = rem > 1
    gpf[big] = rem[big]
    unset = (spf == 0) & (n > 1)
    spf[unset] = n[unset]
    return FactorSieve(lo, hi, _readonly(gpf), _readonly(spf))


def _check_range(lo: int, hi: int) -> None:
    if lo < 1:
        raise RangeError(f"sieve ranges start at 1, got lo={lo}")
    if lo >= hi:
        raise RangeError(f"empty sieve range [{lo}, {hi})")
    if hi > UINT64_LIMIT // 2:
        raise RangeError("sieve range exceeds 63-bit integers")


def segment_bounds(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> list[tuple[int, int]]:
    if segment_size < 1:
        raise DomainError("segment_size must be positive")
    return [(s, min(s + segment_size, hi)) for s in range(lo, hi, segment_size)]


def iter_factor_segments(
    lo: int,
    hi: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> Iterator[FactorSieve]:
    """Yield consecutive FactorSieve blocks covering [lo, hi) in order.

    With ``threads > 1`` blocks are computed concurrently but still yielded in
    ascending order, so consumers see identical data regardless of threading.
    """
    _check_range(lo, hi)
    bounds = segment_bounds(lo, hi, segment_size)
    primes_up_to(math.isqrt(hi - 1))  # warm the cache before threads start
    if threads <= 1 or len(bounds) == 1:
        for s, e in bounds:
            yield _sieve_segment(s, e)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        window = 2 * threads
        pending = [pool.submit(_sieve_segment, s, e) for s, e in bounds[:window]]
        nxt = len(pending)
        while pending:
            block = pending.pop(0).result()
            if nxt < len(bounds):
                pending.append(pool.submit(_sieve_segment, *bounds[nxt]))
                nxt += 1
            yield block


def build_factor_sieve(
    lo: int,
    hi: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> FactorSieve:
    """Materialize gpf/spf for every n in [lo, hi).

    Memory is 16 bytes per integer; use :func:`iter_factor_segments` to stream
    very long ranges instead.
    """
    blocks = list(iter_factor_segments(lo, hi, segment_size, threads))
    if len(blocks) == 1:
        return blocks[0]
    gpf = np.concatenate([b.gpf_array for b in blocks])
    spf = np.concatenate([b.spf_array for b in blocks])
    return FactorSieve(lo, hi, _readonly(gpf), _readonly(spf))


def largest_prime_factor(n: int) -> int:
    if n == 1:
        raise UndefinedValueError("1 has no prime divisor")
    return factorize(n).factors[-1][0]


# ---------------------------------------------------------------------------
# arithmetic progressions


def prime_count_progression(x: int, q: int, a: int) -> int:
    """Number of primes p <= x with p = a (mod q)."""
    if q < 1 or not 0 <= a < q or x < 1:
        raise DomainError(f"need q >= 1, 0 <= a < q, x >= 1; got x={x}, q={q}, a={a}")
    primes = primes_up_to(x)
    if q == 1:
        return len(primes)
    return int(np.count_nonzero(primes % q == a))


def mertens_progression_sum(x: int, d: int) -> float:
    """Sum of 1/p over primes p <= x with p = 1 (mod d), correctly rounded."""
    if d < 1 or x < 3:
        raise DomainError(f"need d >= 1 and x >= 3; got x={x}, d={d}")
    primes = primes_up_to(x)
    if d > 1:
        primes = primes[primes % d == 1]
    return math.fsum((1.0 / primes.astype(np.float64)).tolist())


def brun_titchmarsh_bound(x: float, q: int) -> float:
    """The upper bound 2x / (phi(q) log(x/q)), valid for q < x."""
    if not q < x:
        raise DomainError("Brun-Titchmarsh bound needs q < x")
    return 2.0 * x / (euler_phi(q) * math.log(x / q))


@dataclass
class BTEntry:
    x: int
    q: int
    count: int
    bound: float

    @property
    def ok(self) -> bool:
        return self.count <= self.bound


@dataclass
class BTReport:
    entries: list[BTEntry]

    @property
    def violations(self) -> list[BTEntry]:
        return [e for e in self.entries if not e.ok]

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def min_slack(self) -> float:
        """Smallest bound/count ratio over entries with a nonzero count."""
        return min((e.bound / e.count for e in self.entries if e.count), default=math.inf)


def brun_titchmarsh_check(xs, qmax: int = 100, a: int = 1, require_sqrt: bool = True) -> BTReport:
    """Compare pi(x, q, a mod q) with the Brun-Titchmarsh bound over a grid.

    With ``require_sqrt`` only moduli q < sqrt(x) are tested.
    """
    entries = []
    for x in xs:
        primes = primes_up_to(x)
        for q in range(1, qmax + 1):
            if q >= x or (require_sqrt and q * q >= x):
                continue
            count = int(np.count_nonzero(primes % q == a % q))
            entries.append(BTEntry(int(x), q, count, brun_titchmarsh_bound(x, q)))
    return BTReport(entries)
