"""Counting the set A = {n >= 2 : P(n)^2 > n and gcd(P(n) - 1, n) = 1}.

P(n) denotes the largest prime factor.  Members n <= x are split by the size
of P(n) relative to x:

    A1: P(n) > sqrt(x)
    A2: sqrt(x)/log x < P(n) <= sqrt(x)
    A3: P(n) <= sqrt(x)/log x
"""
from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .constants import BracketedConstant, reference_density_constant
from .errors import DomainError, PartialResultError, RangeError
from .sieve import DEFAULT_SEGMENT_SIZE, FactorSieve, iter_factor_segments

DEFAULT_CAPACITY = 10**9


class Klass(enum.Enum):
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    NOT_MEMBER = "NotMember"


def _a3_threshold(x: int) -> int:
    """Largest integer t with t <= sqrt(x)/log(x), i.e. (t log x)^2 <= x.

    Evaluated in double precision; an integer within one of the true
    boundary may be misclassified between A2 and A3.
    """
    logx = math.log(x)
    t = int(math.sqrt(x) / logx)
    while (t + 1) * logx <= math.sqrt(x):
        t += 1
    while t > 0 and t * logx > math.sqrt(x):
        t -= 1
    return t


def _member_mask(n: np.ndarray, gpf: np.ndarray) -> np.ndarray:
    return (gpf * gpf > n) & (np.gcd(gpf - 1, n) == 1) & (n > 1)


def is_member(n: int, sieve: FactorSieve) -> bool:
    n = int(n)
    if n == 1:
        return False
    p = sieve.gpf(n)
    return p * p > n and math.gcd(p - 1, n) == 1


def classify(n: int, x: int, sieve: FactorSieve) -> Klass:
    if n > x:
        raise DomainError(f"n={n} exceeds x={x}")
    if n < 2 or not is_member(n, sieve):
        return Klass.NOT_MEMBER
    p = sieve.gpf(n)
    if p > math.isqrt(x):
        return Klass.A1
    if p <= _a3_threshold(x):
        return Klass.A3
    return Klass.A2


@dataclass(frozen=True)
class DensityRow:
    x: int
    count_a: int
    count_a1: int
    count_a2: int
    count_a3: int

    @property
    def density(self) -> float:
        return self.count_a / self.x


@dataclass
class DensityTable:
    rows: list[DensityRow]
    reference: BracketedConstant
    flags: list[str] = field(default_factory=list)

    COLUMNS = ("x", "countA", "countA1", "countA2", "countA3", "density", "ref_lower", "ref_upper")

    def row(self, x: int) -> DensityRow:
        for r in self.rows:
            if r.x == x:
                return r
        raise KeyError(x)

    def records(self) -> list[tuple]:
        lo, hi = self.reference.as_floats()
        return [
            (r.x, r.count_a, r.count_a1, r.count_a2, r.count_a3, r.density, lo, hi)
            for r in self.rows
        ]


def _count_block(block: FactorSieve, checkpoints: list[int], thresholds) -> np.ndarray:
    """Per-checkpoint [A1, A2, A3] counts contributed by one sieve block."""
    out = np.zeros((len(checkpoints), 3), dtype=np.int64)
    n = block.numbers()
    gpf = block.gpf_array
    member = _member_mask(n, gpf)
    n, gpf = n[member], gpf[member]
    for i, (x, (t1, t3)) in enumerate(zip(checkpoints, thresholds)):
        if x < block.lo:
            continue
        if x < block.hi - 1:
            keep = n <= x
            p = gpf[keep]
        else:
            p = gpf
        a1 = int(np.count_nonzero(p > t1))
        a3 = int(np.count_nonzero(p <= t3))
        out[i] = (a1, len(p) - a1 - a3, a3)
    return out


def density_table(
    checkpoints,
    capacity: int = DEFAULT_CAPACITY,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    reference_y: int = 10**6,
    progress: bool = False,
) -> DensityTable:
    """Exact counts of A, A1, A2, A3 at each checkpoint in one streaming pass.

    Checkpoints above ``capacity`` are not computed; a PartialResultError
    carrying the completed rows is raised instead.
    """
    xs = [int(x) for x in checkpoints]
    if not xs or any(b <= a for a, b in zip(xs, xs[1:])):
        raise DomainError("checkpoints must be a nonempty increasing list")
    if xs[0] < 2:
        raise DomainError("checkpoints must be >= 2")
    feasible = [x for x in xs if x <= capacity]
    reference = reference_density_constant(reference_y)
    thresholds = [(math.isqrt(x), _a3_threshold(x)) for x in feasible]
    rows: list[DensityRow] = []
    if feasible:
        totals = np.zeros((len(feasible), 3), dtype=np.int64)
        top = feasible[-1]
        for block in iter_factor_segments(1, top + 1, segment_size, threads):
            totals += _count_block(block, feasible, thresholds)
            if progress:
                print(f"density: sieved to {block.hi - 1}/{top}", file=sys.stderr)
        for x, (a1, a2, a3) in zip(feasible, totals.tolist()):
            rows.append(DensityRow(x, a1 + a2 + a3, a1, a2, a3))
    if len(feasible) < len(xs):
        raise PartialResultError(
            f"checkpoint {xs[len(feasible)]} exceeds sieve capacity {capacity}",
            rows,
            DensityTable(rows, reference, ["partial"]),
        )
    return DensityTable(rows, reference)


# ---------------------------------------------------------------------------
# brute-force oracle path (independent of the sieve)


def _gpf_trial(n: int) -> int:
    p, last = 2, 1
    while p * p <= n:
        if n % p == 0:
            last = p
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    return n if n > 1 else last


def is_member_bruteforce(n: int) -> bool:
    if n < 2:
        return False
    p = _gpf_trial(n)
    return p * p > n and math.gcd(p - 1, n) == 1


def count_members_bruteforce(x: int) -> int:
    return sum(1 for n in range(2, x + 1) if is_member_bruteforce(n))


def classify_bruteforce(n: int, x: int) -> Klass:
    if not is_member_bruteforce(n):
        return Klass.NOT_MEMBER
    p = _gpf_trial(n)
    if p * p > x:
        return Klass.A1
    if (p * math.log(x)) ** 2 <= x:
        return Klass.A3
    return Klass.A2


# ---------------------------------------------------------------------------


@dataclass
class PartitionReport:
    x: int
    count_a2: int
    count_a3: int
    a3_bound: float
    a2_bound: float
    a3_ok: bool
    a2_ok: bool
    a3_margin: float
    a2_margin: float
    boundary_tolerance: int = 1  # A2/A3 split may shift by one integer

    @property
    def ok(self) -> bool:
        return self.a3_ok and self.a2_ok


def partition_bound_check(x: int, table: DensityTable) -> PartitionReport:
    """Check |A3| <= x/log^2 x and |A2| <= 4 x loglog x / log x at checkpoint x."""
    if x < 100:
        raise DomainError("partition bounds are checked for x >= 100 only")
    try:
        row = table.row(x)
    except KeyError:
        raise RangeError(f"x={x} is not a checkpoint of the table") from None
    logx = math.log(x)
    a3_bound = x / logx**2
    a2_bound = 4 * x * math.log(logx) / logx
    return PartitionReport(
        x=x,
        count_a2=row.count_a2,
        count_a3=row.count_a3,
        a3_bound=a3_bound,
        a2_bound=a2_bound,
        a3_ok=row.count_a3 <= a3_bound,
        a2_ok=row.count_a2 <= a2_bound,
        a3_margin=a3_bound - row.count_a3,
        a2_margin=a2_bound - row.count_a2,
    )
