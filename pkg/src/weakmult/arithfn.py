"""Finite-range estimators for weak super-multiplicativity, normal orders,
essential limits and exponent profiles, plus the growth inequalities
g(n(1+gamma)x) >= (1 - 5 eps) f(n) g(x) and their iterates.

None of these estimators proves an asymptotic statement; they either find a
counterexample or accumulate evidence on a finite range.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, RangeError
from .sieve import build_factor_sieve

EXACT = "exact-formula"
TABULATED = "tabulated"
SEEDED = "seeded-random"


@dataclass(frozen=True)
class ArithmeticFunction:
    """A nonnegative function on the positive integers.

    ``func`` is vectorized: it maps a numpy array of arguments to an array of
    values.  Functions with ``integer_indexed=False`` are closed-form and may
    be evaluated at real arguments directly; the others are extended to the
    reals by :meth:`on_reals`.
    """

    name: str
    func: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    kind: str = EXACT
    integer_indexed: bool = True

    def __call__(self, n):
        arr = np.asarray(n)
        if self.integer_indexed:
            if arr.dtype.kind == "f":
                if not np.all(arr == np.floor(arr)):
                    raise DomainError(f"{self.name} is only defined on integers")
                arr = arr.astype(np.int64)
            if np.any(arr < 1):
                raise DomainError(f"{self.name} is defined for n >= 1")
        out = np.asarray(self.func(arr), dtype=np.float64)
        return float(out) if out.ndim == 0 else out

    def on_reals(self, x):
        """Evaluate at real x > 0.

        Integer-indexed functions are interpolated linearly in (log n, log f)
        between consecutive integers and held at f(1) on (0, 1].
        """
        x = np.asarray(x, dtype=np.float64)
        if not self.integer_indexed:
            out = np.asarray(self.func(x), dtype=np.float64)
            return float(out) if out.ndim == 0 else out
        xs = np.maximum(np.atleast_1d(x), 1.0)
        a = np.floor(xs).astype(np.int64)
        fa, fb = self(a), self(a + 1)
        if np.any(fa <= 0) or np.any(fb <= 0):
            raise DomainError(f"log-log interpolation of {self.name} needs positive values")
        w = np.log(xs / a) / np.log1p(1.0 / a)
        out = np.exp(np.log(fa) + w * (np.log(fb) - np.log(fa)))
        return float(out[0]) if x.ndim == 0 else out


# ---------------------------------------------------------------------------
# builtin constructors


def power(c: float) -> ArithmeticFunction:
    c = float(c)
    return ArithmeticFunction(
        f"power({c!r})",
        lambda n: np.power(np.asarray(n, dtype=np.float64), c),
        EXACT,
        integer_indexed=False,
    )


def default_delta(t):
    """The slowly decreasing schedule 1/log log(t + 20)."""
    return 1.0 / np.log(np.log(np.asarray(t, dtype=np.float64) + 20.0))


def slow_power(delta: Callable = default_delta, name: str = "slow_power") -> ArithmeticFunction:
    """n -> n^(1 - delta(n)); super-multiplicative whenever delta is nonincreasing."""

    def func(n):
        n = np.asarray(n, dtype=np.float64)
        return np.power(n, 1.0 - delta(n))

    return ArithmeticFunction(name, func, EXACT, integer_indexed=False)


def constant(c: float) -> ArithmeticFunction:
    c = float(c)
    if c < 0:
        raise DomainError("arithmetic functions are nonnegative")
    return ArithmeticFunction(
        f"constant({c!r})", lambda n: np.full(np.shape(n), c), EXACT, integer_indexed=False
    )


@functools.lru_cache(maxsize=4)
def _divisor_tables(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """tau(n) and sigma(n) for 0 <= n <= limit (index 0 unused)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    spf[1:] = build_factor_sieve(1, limit + 1).spf_array
    n = np.arange(limit + 1, dtype=np.int64)
    tau = np.ones(limit + 1, dtype=np.int64)
    sig = np.ones(limit + 1, dtype=np.int64)
    idx = np.arange(2, limit + 1)
    cur = n[idx].copy()
    while len(idx):
        p = spf[cur]
        e = np.zeros(len(idx), dtype=np.int64)
        pe = np.ones(len(idx), dtype=np.int64)
        live = np.ones(len(idx), dtype=bool)
        while live.any():
            cur[live] //= p[live]
            e[live] += 1
            pe[live] *= p[live]
            live = cur % p == 0
        tau[idx] *= e + 1
        sig[idx] *= (pe * p - 1) // (p - 1)
        more = cur > 1
        idx, cur = idx[more], cur[more]
    tau[0] = sig[0] = 0
    tau.setflags(write=False)
    sig.setflags(write=False)
    return tau, sig


def _table_lookup(which: int):
    def func(n):
        n = np.asarray(n, dtype=np.int64)
        top = int(n.max(initial=1))
        size = max(1024, 1 << (top - 1).bit_length())
        return _divisor_tables(size)[which][n]

    return func


def divisor_count() -> ArithmeticFunction:
    return ArithmeticFunction("divisor_count", _table_lookup(0), TABULATED)


def sigma() -> ArithmeticFunction:
    return ArithmeticFunction("sigma", _table_lookup(1), TABULATED)


def _splitmix64(z: np.ndarray) -> np.ndarray:
    z = z + np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def seeded_uniform(seed: int, n) -> np.ndarray:
    """Uniform [0, 1) value keyed by (seed, n); independent of evaluation order."""
    key = np.atleast_1d(np.asarray(n, dtype=np.int64)).astype(np.uint64)
    s = _splitmix64(np.array([seed & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64))
    h = _splitmix64(key ^ s)
    return (h >> np.uint64(11)).astype(np.float64) * 2.0**-53


def seeded_iid(distribution="uniform", seed: int = 0) -> ArithmeticFunction:
    """i.i.d. values f(n); ``distribution`` is "uniform" or an inverse CDF on [0, 1)."""
    if distribution == "uniform":
        inv_cdf, label = (lambda u: u), "uniform"
    elif callable(distribution):
        inv_cdf, label = distribution, getattr(distribution, "__name__", "custom")
    else:
        raise DomainError(f"unknown distribution {distribution!r}")

    def func(n):
        shape = np.shape(n)
        return inv_cdf(seeded_uniform(seed, n)).reshape(shape)

    return ArithmeticFunction(f"seeded_iid({label}, seed={seed})", func, SEEDED)


def tabulated(series: Sequence[float], name: str = "tabulated") -> ArithmeticFunction:
    """f(n) = series[n - 1] for 1 <= n <= len(series)."""
    values = np.asarray(series, dtype=np.float64)
    if np.any(values < 0):
        raise DomainError("tabulated values must be nonnegative")
    values.setflags(write=False)
    size = len(values)

    def func(n):
        n = np.asarray(n, dtype=np.int64)
        if np.any(n > size):
            raise RangeError(f"{name} is tabulated only up to n={size}")
        return values[n - 1]

    return ArithmeticFunction(name, func, TABULATED)


def reciprocal(f: ArithmeticFunction) -> ArithmeticFunction:
    def func(n):
        v = np.asarray(f.func(n), dtype=np.float64)
        if np.any(v <= 0):
            raise DomainError(f"1/{f.name} needs {f.name} > 0")
        return 1.0 / v

    return ArithmeticFunction(f"1/{f.name}", func, f.kind, f.integer_indexed)


# ---------------------------------------------------------------------------
# weak super-multiplicativity


@dataclass
class WindowReport:
    """Outcome of scanning one window [x, (1+eps)x].

    ``fraction`` is hits/window_size; ``delta_x`` is hits/x, the normalization
    used in the defining inequality.  The two differ by roughly the factor eps.
    """

    n: int
    epsilon: float
    x: float
    window: tuple[int, int]
    window_size: int
    hits: int
    fraction: Optional[float]
    delta_x: float
    flags: list[str] = field(default_factory=list)


def wsm_check(f: ArithmeticFunction, n: int, epsilon: float, xs) -> list[WindowReport]:
    """Count m in [x, (1+eps)x] with f(nm) >= (1-eps) f(n) f(m), for each x."""
    if n < 1 or not 0 < epsilon < 1:
        raise DomainError("need n >= 1 and 0 < epsilon < 1")
    fn = f(n)
    reports = []
    for x in xs:
        if x < 1:
            raise DomainError(f"window start x={x} must be >= 1")
        lo, hi = math.ceil(x), math.floor((1 + epsilon) * x)
        m = np.arange(lo, hi + 1, dtype=np.int64)
        if len(m) == 0:
            reports.append(WindowReport(n, epsilon, x, (lo, hi), 0, 0, None, 0.0, ["empty-window"]))
            continue
        hits = int(np.count_nonzero(f(n * m) >= (1 - epsilon) * fn * f(m)))
        reports.append(WindowReport(n, epsilon, x, (lo, hi), len(m), hits, hits / len(m), hits / x))
    return reports


# ---------------------------------------------------------------------------
# normal order, continuity, essential limits


def normal_order_deviation(f: ArithmeticFunction, g: ArithmeticFunction, epsilon: float, N: int) -> float:
    """(1/N) #{n <= N : |f(n) - g(n)| >= eps g(n)}."""
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    n = np.arange(1, N + 1, dtype=np.int64)
    gv = np.atleast_1d(g(n))
    if np.any(gv <= 0):
        bad = int(n[np.argmax(gv <= 0)])
        raise DomainError(f"normal order must be strictly positive; g({bad}) = 0")
    fv = np.atleast_1d(f(n))
    return int(np.count_nonzero(np.abs(fv - gv) >= epsilon * gv)) / N


@dataclass
class ContinuityReport:
    holds_on_samples: bool
    counterexample: Optional[tuple[float, float]]
    samples_checked: int
    flags: list[str] = field(default_factory=list)


def log_uniform_modulus_check(
    g: ArithmeticFunction,
    epsilon: float,
    delta: float,
    seed: int = 0,
    bases=None,
    offsets_per_base: int = 32,
) -> ContinuityReport:
    """Search for x, y with |x/y - 1| < delta but |g(x)/g(y) - 1| >= epsilon.

    Base points y default to a geometric grid on [1e-3, 1e6], scanned in
    ascending order; around each, ``offsets_per_base`` ratios are drawn
    uniformly from (-delta, delta) plus two near the ends of that interval.
    A clean run is evidence only.
    """
    if epsilon <= 0 or delta <= 0:
        raise DomainError("epsilon and delta must be positive")
    if bases is None:
        bases = np.geomspace(1e-3, 1e6, 361)
    rng = np.random.default_rng(seed)
    edge = delta * (1 - 2.0**-20)
    checked = 0
    flags: list[str] = []
    for y in np.asarray(bases, dtype=np.float64):
        t = np.concatenate([[-edge, edge], rng.uniform(-delta, delta, offsets_per_base)])
        t = t[np.abs(t) < delta]
        x = y * (1 + t)
        with np.errstate(over="ignore", invalid="ignore"):
            gy = g.on_reals(y)
            gx = np.atleast_1d(g.on_reals(x))
            if gy <= 0 or np.any(gx <= 0):
                raise DomainError(f"{g.name} must be positive, failed near {y!r}")
            ratio = gx / gy
        finite = np.isfinite(ratio)
        if not finite.all():
            if "nonfinite-skipped" not in flags:
                flags.append("nonfinite-skipped")
            ratio, x = ratio[finite], x[finite]
        checked += len(ratio)
        bad = np.abs(ratio - 1) >= epsilon
        if bad.any():
            i = int(np.argmax(bad))
            return ContinuityReport(False, (float(x[i]), float(y)), checked, flags)
    return ContinuityReport(True, None, checked, flags)


@dataclass
class EssentialLimit:
    value: float
    spread: float
    infinite: bool
    trimmed: int
    lower_quantile: float


def essential_limit(a, N: int, theta: float, threshold: float = 100.0) -> EssentialLimit:
    """Trimmed estimate of the essential limit of a_1, ..., a_N.

    The floor(theta*N) values furthest from the median are discarded; the
    estimate is the midpoint of what remains and ``spread`` its half-range.
    ``infinite`` is set when the lower theta-quantile exceeds ``threshold``.
    """
    if not 0 < theta < 0.5:
        raise DomainError("trim fraction must lie in (0, 1/2)")
    if N < 100:
        raise DomainError("essential_limit needs N >= 100")
    if callable(a):
        values = np.asarray(a(np.arange(1, N + 1, dtype=np.int64)), dtype=np.float64)
    else:
        values = np.asarray(a, dtype=np.float64)[:N]
        if len(values) < N:
            raise DomainError(f"sequence has {len(values)} < N={N} terms")
    k = int(math.floor(theta * N))
    median = float(np.median(values))
    order = np.argsort(np.abs(values - median), kind="stable")
    kept = values[order[: N - k]]
    lo, hi = float(kept.min()), float(kept.max())
    q = float(np.quantile(values, theta))
    return EssentialLimit((lo + hi) / 2, (hi - lo) / 2, q > threshold, k, q)


def trim_schedule(N: int) -> float:
    """theta(N) = 1/log N, clipped into (0, 1/2)."""
    return min(1.0 / math.log(N), 0.49)


@dataclass
class ExponentEstimate:
    N: int
    sup_exponent: float
    sup_argmax: int
    ess_exponent: float
    ess_spread: float
    trim_fraction: float
    zeros: int
    trajectory: list[tuple[int, float, float]]

    def defect(self, f: ArithmeticFunction, n) -> np.ndarray:
        """sup_exponent - log f(n)/log n, the gap below the extremal exponent."""
        n = np.asarray(n)
        return self.sup_exponent - np.log(f(n)) / np.log(n)


def _checkpoints(N: int) -> list[int]:
    cps = []
    c = 100
    while c < N:
        cps.append(c)
        c *= 2
    cps.append(N)
    return cps


def exponent_profile(f: ArithmeticFunction, N: int, checkpoints=None) -> ExponentEstimate:
    """sup and essential limit of log f(n)/log n over 2 <= n <= N.

    n with f(n) = 0 are dropped from both statistics and counted in ``zeros``.
    The trajectory gives (checkpoint, sup, ess) at doubling checkpoints.
    """
    if N < 101:
        raise DomainError("exponent_profile needs N > 100")
    n = np.arange(2, N + 1, dtype=np.int64)
    v = np.atleast_1d(f(n))
    pos = v > 0
    if not pos.any():
        raise DomainError(f"{f.name} vanishes on [2, {N}]; profile undefined")
    n = n[pos]
    e = np.log(v[pos]) / np.log(n)
    running_max = np.maximum.accumulate(e)
    trajectory = []
    for cp in checkpoints or _checkpoints(N):
        m = int(np.searchsorted(n, cp, side="right"))
        if m < 100:
            continue
        ess = essential_limit(e[:m], m, trim_schedule(cp))
        trajectory.append((cp, float(running_max[m - 1]), ess.value))
    theta = trim_schedule(N)
    ess = essential_limit(e, len(e), theta)
    i = int(np.argmax(e))
    return ExponentEstimate(
        N=N,
        sup_exponent=float(e[i]),
        sup_argmax=int(n[i]),
        ess_exponent=ess.value,
        ess_spread=ess.spread,
        trim_fraction=theta,
        zeros=int(np.count_nonzero(~pos)),
        trajectory=trajectory,
    )


@dataclass
class SandwichReport:
    """Two-sided exponent bounds from profiling f and 1/f together.

    For every n, n^(-sup_inv) <= f(n) <= n^(sup_f) on the scanned range; f is
    an exact power exactly when the two exponents meet.
    """

    profile: ExponentEstimate
    reciprocal_profile: ExponentEstimate
    gap: float
    is_power: bool


def reciprocal_sandwich(f: ArithmeticFunction, N: int, tol: float = 1e-9) -> SandwichReport:
    pf = exponent_profile(f, N)
    pi = exponent_profile(reciprocal(f), N)
    gap = pf.sup_exponent + pi.sup_exponent
    return SandwichReport(pf, pi, gap, abs(gap) <= tol)


# ---------------------------------------------------------------------------
# growth inequalities


def _check_growth_params(n, epsilon, gamma, x):
    if not 0 < gamma <= epsilon < 0.2:
        raise DomainError("need 0 < gamma <= epsilon < 1/5")
    if n < 1 or x < 1:
        raise DomainError("need n >= 1 and x >= 1")


def _eval_at(g: ArithmeticFunction, t: float) -> tuple[float, float]:
    """g at t; integer-indexed g is evaluated at round(t). Returns (argument, value)."""
    if g.integer_indexed:
        t = float(max(1, round(t)))
    return t, g(t)


@dataclass
class GrowthMargin:
    margin: float
    lhs: float
    rhs: float
    argument: float
    rounded: bool

    @property
    def holds(self) -> bool:
        return self.margin >= 0


def growth_inequality_check(f, g, n: int, epsilon: float, gamma: float, x: float) -> GrowthMargin:
    """margin = g(n(1+gamma)x) - (1 - 5 eps) f(n) g(x)."""
    _check_growth_params(n, epsilon, gamma, x)
    arg, lhs = _eval_at(g, n * (1 + gamma) * x)
    _, gx = _eval_at(g, x)
    rhs = (1 - 5 * epsilon) * f(n) * gx
    return GrowthMargin(lhs - rhs, lhs, rhs, arg, g.integer_indexed)


@dataclass
class GrowthTrajectory:
    steps: list[tuple[int, float, float, float]]  # (k, argument, lhs, rhs)
    induced_bound: float
    mu: float
    truncated: bool

    @property
    def holds(self) -> bool:
        return all(lhs >= rhs for _, _, lhs, rhs in self.steps)


def iterate_growth(f, g, n: int, epsilon: float, gamma: float, x: float, k_max: int) -> GrowthTrajectory:
    """Compare g(n^k (1+gamma)^k x) with (1-5eps)^k f(n)^k g(x) for k = 0..k_max.

    Also returns the induced lower bound log((1-5eps) f(n)) / log(n(1+gamma))
    for log g(y)/log y, and mu = min g on [1, n(1+gamma)].
    """
    _check_growth_params(n, epsilon, gamma, x)
    step = n * (1 + gamma)
    base = (1 - 5 * epsilon) * f(n)
    _, gx = _eval_at(g, x)
    steps = []
    truncated = False
    for k in range(k_max + 1):
        with np.errstate(over="ignore"):
            y = step**k * x if k else float(x)
            rhs = base**k * gx
        if not math.isfinite(y) or y > 1e300:
            truncated = True
            break
        arg, lhs = _eval_at(g, y) if k else (float(x), gx)
        if not (math.isfinite(lhs) and math.isfinite(rhs)):
            truncated = True
            break
        steps.append((k, arg, lhs, rhs))
    induced = math.log(base) / math.log(step) if base > 0 else -math.inf
    if g.integer_indexed:
        grid = np.arange(1, math.floor(step) + 1, dtype=np.int64)
    else:
        grid = np.unique(np.concatenate([np.linspace(1.0, step, 4097), np.arange(1, math.floor(step) + 1)]))
    mu = float(np.min(g(grid)))
    return GrowthTrajectory(steps, induced, mu, truncated)
