"""Subgroup growth of Z^r and prime-index subgroup counts of Z^r + A.

Every finite-index subgroup of an abelian group is normal, so a(n), the
number of index-n subgroups of Z^r, is also its normal subgroup growth.  Its
Dirichlet series is zeta(s) zeta(s-1) ... zeta(s-r+1), so a is the Dirichlet
convolution of n^0, n^1, ..., n^(r-1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import DomainError, RefusalError
from .sieve import factorize, is_prime

HNF_MAX_RANK = 4
HNF_MAX_INDEX = 500
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class SubgroupGrowthSeries:
    r: int
    N: int
    a: tuple[int, ...]  # a[n - 1] = number of index-n subgroups

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.N:
            raise IndexError(f"index {n} outside 1..{self.N}")
        return self.a[n - 1]

    def as_array(self) -> np.ndarray:
        """Values as int64, or as Python ints (object dtype) if they do not fit."""
        if max(self.a) < _INT64_SAFE:
            return np.array(self.a, dtype=np.int64)
        return np.array(self.a, dtype=object)

    def rows(self) -> list[tuple[int, int]]:
        return list(enumerate(self.a, start=1))


def dirichlet_convolve(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """(u * v)(n) = sum_{dk = n} u(d) v(k); arrays indexed from n = 1.

    Pairs with d <= sqrt(N) are added by strided slices, the rest by
    scattering along k, so the Python-level loop has O(sqrt N) iterations.
    """
    N = len(u)
    out = np.zeros(N, dtype=u.dtype) if u.dtype != object else np.array([0] * N, dtype=object)
    s = math.isqrt(N)
    for d in range(1, s + 1):
        out[d - 1 :: d] += u[d - 1] * v[: N // d]
    for k in range(1, N // (s + 1) + 1):
        d = np.arange(s + 1, N // k + 1)
        out[k * d - 1] += u[d - 1] * v[k - 1]
    return out


def subgroup_counts_zr(r: int, N: int) -> SubgroupGrowthSeries:
    """a(n) for 1 <= n <= N via iterated Dirichlet convolution.

    a(n) <= n^(r-1) H_n^(r-1) with H_n the harmonic number, so the int64 path
    is used whenever N^(r-1) (1 + log N)^(r-1) < 2^62 and exact Python
    integers otherwise.
    """
    if r < 1 or N < 1:
        raise DomainError("need r >= 1 and N >= 1")
    wide = (r - 1) * (math.log2(N) + math.log2(1 + math.log(N))) >= 62
    n = np.arange(1, N + 1, dtype=np.int64)
    a = np.ones(N, dtype=np.int64)
    if wide:
        a = a.astype(object)
        n = n.astype(object)
    for j in range(1, r):
        a = dirichlet_convolve(a, n**j)
    return SubgroupGrowthSeries(r, N, tuple(int(v) for v in a.tolist()))


def _ordered_factorizations(n: int, r: int):
    """All r-tuples of positive integers with product n."""
    if r == 1:
        yield (n,)
        return
    for d in range(1, n + 1):
        if n % d == 0:
            for rest in _ordered_factorizations(n // d, r - 1):
                yield (d,) + rest


def hnf_count(n: int, r: int) -> int:
    """Number of r x r upper-triangular Hermite normal forms with determinant n.

    Diagonals (d_1, ..., d_r) run over ordered factorizations of n; column j
    has j - 1 entries above the pivot, each reduced modulo d_j.
    """
    total = 0
    for diag in _ordered_factorizations(n, r):
        choices = 1
        for j, d in enumerate(diag):
            choices *= d**j
        total += choices
    return total


def subgroup_counts_hnf_oracle(r: int, N: int) -> SubgroupGrowthSeries:
    if r < 1 or N < 1:
        raise DomainError("need r >= 1 and N >= 1")
    if r > HNF_MAX_RANK or N > HNF_MAX_INDEX:
        raise RefusalError(f"HNF enumeration is limited to r <= {HNF_MAX_RANK}, N <= {HNF_MAX_INDEX}")
    return SubgroupGrowthSeries(r, N, tuple(hnf_count(n, r) for n in range(1, N + 1)))


@dataclass(frozen=True)
class AbelianGroupDescriptor:
    """Z^r + Z/d_1 + ... + Z/d_k with invariant factors d_1 | d_2 | ... | d_k."""

    r: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.r < 0:
            raise DomainError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if any(d < 2 for d in self.torsion):
            raise DomainError("invariant factors must be >= 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise DomainError("invariant factors must form a divisibility chain")

    def p_rank(self, p: int) -> int:
        return self.r + sum(1 for d in self.torsion if d % p == 0)


def prime_index_count(desc: AbelianGroupDescriptor, p: int) -> int:
    """Number of index-p subgroups: (p^s - 1)/(p - 1) with s the F_p-rank."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    s = desc.p_rank(p)
    return (p**s - 1) // (p - 1)


@dataclass
class MultiplicativityReport:
    checked: list[tuple[int, int, int, int]]  # (n, m, a(nm), a(n) a(m))
    rejected: list[tuple[int, int]]
    super_ok: bool
    equality_ok: bool

    @property
    def ok(self) -> bool:
        return self.super_ok and self.equality_ok


def coprime_multiplicativity_check(
    series: SubgroupGrowthSeries, pairs: Iterable[tuple[int, int]], abelian: bool = True
) -> MultiplicativityReport:
    """a(nm) >= a(n) a(m) on coprime pairs; with ``abelian`` also equality."""
    checked, rejected = [], []
    super_ok = equality_ok = True
    for n, m in pairs:
        if math.gcd(n, m) != 1 or n * m > series.N or min(n, m) < 1:
            rejected.append((n, m))
            continue
        lhs, rhs = series[n * m], series[n] * series[m]
        checked.append((n, m, lhs, rhs))
        super_ok &= lhs >= rhs
        if abelian:
            equality_ok &= lhs == rhs
    return MultiplicativityReport(checked, rejected, super_ok, equality_ok)


def np_condition_check(n: int, p: int) -> bool:
    """gcd(n, p(p-1)) = 1 and no divisor d > 1 of n has d = 1 (mod p)."""
    if n < 1:
        raise DomainError("n must be positive")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if math.gcd(n, p * (p - 1)) != 1:
        return False
    return not any(d % p == 1 for d in factorize(n).divisors() if d > 1)


@dataclass
class GrowthBoundReport:
    epsilon: float
    N: int
    violations: int
    fraction: float
    largest_violator: int | None
    violators: list[int] = field(default_factory=list)  # first 100 only


def growth_bound_check(series: SubgroupGrowthSeries, epsilon: float) -> GrowthBoundReport:
    """Where does a(n) exceed n^(r-1+eps) on 1..N?"""
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    exponent = series.r - 1 + epsilon
    bad = [n for n, v in series.rows() if math.log(v) > exponent * math.log(n)]
    return GrowthBoundReport(
        epsilon, series.N, len(bad), len(bad) / series.N, bad[-1] if bad else None, bad[:100]
    )
