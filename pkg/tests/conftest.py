import math

import pytest

from weakmult.sieve import build_factor_sieve


def trial_primes(limit):
    """Primes <= limit by trial division against earlier primes."""
    ps = []
    for n in range(2, limit + 1):
        r = math.isqrt(n)
        for p in ps:
            if p > r:
                ps.append(n)
                break
            if n % p == 0:
                break
        else:
            ps.append(n)
    return ps


def trial_factor(n):
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def trial_gpf(n):
    return trial_factor(n)[-1][0]


def trial_spf(n):
    return trial_factor(n)[0][0]


@pytest.fixture(scope="session")
def small_sieve():
    return build_factor_sieve(1, 10**5 + 1)


# ---------------------------------------------------------------------------
# acceptance summary: one PASS/FAIL line per criterion, independent of -s

_criteria: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    number, title = marker
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _, ok = _criteria.get(number, (title, True))
        _criteria[number] = (title, ok and report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("criterion")
    if m is not None:
        outcome.get_result()._criterion = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
