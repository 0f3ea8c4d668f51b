"""Rigorous brackets for prod_p (1 - 1/(p(p-1))) and log 2 times that product.

The partial product over p <= y is accumulated in x87 extended precision with
an explicit error budget: every factor is rounded outward by one ulp and the
accumulated product is widened by one ulp per multiplication.  The tail over
p > y is at least 1 - 2/y, which gives the lower end of the bracket.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .sieve import primes_up_to

_LD = np.longdouble
_LD_EPS = Fraction(*np.finfo(_LD).eps.as_integer_ratio())

DEFAULT_CUTOFF = 10**6


@dataclass(frozen=True)
class BracketedConstant:
    """Closed interval [lower, upper] known to contain a constant.

    Endpoints are exact rationals so that containment and width comparisons
    carry no rounding of their own.
    """

    lower: Fraction
    upper: Fraction
    cutoff_y: int

    def __post_init__(self):
        if not 0 < self.lower <= self.upper:
            raise ValueError(f"malformed bracket [{self.lower}, {self.upper}]")

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def midpoint(self) -> float:
        return float((self.lower + self.upper) / 2)

    def __contains__(self, value) -> bool:
        v = value if isinstance(value, Fraction) else Fraction(value)
        return self.lower <= v <= self.upper

    def contains_bracket(self, other: "BracketedConstant") -> bool:
        return self.lower <= other.lower and other.upper <= self.upper

    def as_floats(self) -> tuple[float, float]:
        """Endpoints rounded outward to double precision."""
        lo, hi = float(self.lower), float(self.upper)
        if Fraction(lo) > self.lower:
            lo = math.nextafter(lo, -math.inf)
        if Fraction(hi) < self.upper:
            hi = math.nextafter(hi, math.inf)
        return lo, hi


def _partial_product_bounds(y: int) -> tuple[Fraction, Fraction]:
    """Rigorous (low, high) bounds on prod_{p <= y} (1 - 1/(p(p-1)))."""
    primes = primes_up_to(y)
    q = (primes * (primes - 1)).astype(_LD)  # exact: p(p-1) < 2**64
    inv = _LD(1) / q
    inv_lo = np.nextafter(inv, _LD(0))
    inv_hi = np.nextafter(inv, _LD(1))
    f_hi = np.nextafter(_LD(1) - inv_lo, _LD(2))
    f_lo = np.nextafter(_LD(1) - inv_hi, _LD(0))
    k = len(primes)
    # |rounded product - exact product| <= ((1 + eps)^k - 1) * product
    slack = (1 + _LD_EPS) ** k - 1 if k < 64 else Fraction(k) * _LD_EPS * Fraction(101, 100)
    hi = Fraction(*np.prod(f_hi).as_integer_ratio()) * (1 + slack)
    lo = Fraction(*np.prod(f_lo).as_integer_ratio()) * (1 - slack)
    return lo, hi


def _bracket(y: int, scale_lo: Fraction, scale_hi: Fraction) -> BracketedConstant:
    y = int(y)
    if y < 3:
        raise DomainError(f"tail bound requires y >= 3, got {y}")
    lo, hi = _partial_product_bounds(y)
    upper = scale_hi * hi
    lower = upper * (1 - Fraction(2, y))
    if lower > scale_lo * lo * (1 - Fraction(1, y)):
        raise DomainError(f"cutoff y={y} too large for the extended-precision error budget")
    return BracketedConstant(lower, upper, y)


def euler_product_partial(y: int) -> BracketedConstant:
    """Bracket for the infinite product prod_p (1 - 1/(p(p-1))) from primes <= y.

    ``upper`` bounds the partial product from above; ``lower`` is
    ``upper * (1 - 2/y)``.  That value is below the true constant because the
    tail is in fact at least ``1 - 1/y`` (sum over n > y of 1/(n(n-1)) = 1/y),
    and the margin between the two swamps the rounding slack; this is
    re-verified on every call.
    """
    return _bracket(y, Fraction(1), Fraction(1))


def _log2_bounds() -> tuple[Fraction, Fraction]:
    v = math.log(2.0)  # libm log is faithful to within 1 ulp
    return Fraction(math.nextafter(v, 0.0)), Fraction(math.nextafter(v, 1.0))


def reference_density_constant(y: int = DEFAULT_CUTOFF) -> BracketedConstant:
    """Bracket for (log 2) * prod_p (1 - 1/(p(p-1))), built like the plain product."""
    return _bracket(y, *_log2_bounds())
