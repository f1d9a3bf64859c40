"""Closed forms checked against direct enumeration on small moduli."""

import logging
import random
from dataclasses import dataclass
from typing import Callable

import gmpy2

from hyperbola.geometry import (
    distance_class,
    distance_set,
    distance_set_size_formula,
    fundamental_region,
    modular_distance_class,
)
from ntheory.residues import legendre_symbol, odd_primes_upto
from targets.counting import (
    count_solutions_brute,
    enumerate_targets,
    gamma1,
    gamma2,
    tau_brute,
    tau_prime,
    tau_prime_power,
)
from targets.density import density_table

logger = logging.getLogger(__name__)

PRIME_BOUND = 100
POWER_LIMIT = 3000
SEED = 20240611


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""


def _primes() -> list[int]:
    return odd_primes_upto(PRIME_BOUND - 1)


def _fail(name: str, cases: int, detail: str) -> CheckResult:
    logger.error("selftest %s failed: %s", name, detail)
    return CheckResult(name, False, cases, detail)


def check_tau_closed_form() -> CheckResult:
    cases = 0
    for p in _primes():
        for n in range(1, p):
            cases += 1
            if tau_prime(n, p) != tau_brute(n, p):
                return _fail("tau-closed-form", cases, f"n={n} p={p}")
    return CheckResult("tau-closed-form", True, cases)


def check_distance_count() -> CheckResult:
    cases = 0
    for p in _primes():
        for n in range(1, p):
            cases += 1
            if len(distance_set(n, p)) != distance_set_size_formula(n, p):
                return _fail("distance-count", cases, f"n={n} p={p}")
    return CheckResult("distance-count", True, cases)


def check_prime_power_recursion() -> CheckResult:
    cases = 0
    for p in (3, 5, 7, 11, 13):
        k = 1
        while p**k <= POWER_LIMIT:
            for n in range(1, p):
                cases += 1
                if tau_prime_power(n, p, k) != tau_brute(n, p**k):
                    return _fail("prime-power", cases, f"n={n} p={p} k={k}")
            k += 1
    return CheckResult("prime-power", True, cases)


def _odd_at_least_three(rng: random.Random, upper: int) -> int:
    return rng.randrange(3, upper, 2)


def check_multiplicativity(pairs: int = 100, limit: int = 10**4) -> CheckResult:
    rng = random.Random(SEED)
    cases = 0
    while cases < pairs:
        s = _odd_at_least_three(rng, limit // 3)
        t = _odd_at_least_three(rng, limit // s + 1) if limit // s > 3 else 3
        if s * t >= limit or gmpy2.gcd(s, t) != 1:
            continue
        n = rng.randrange(1, s * t)
        if gmpy2.gcd(n, s * t) != 1:
            continue
        cases += 1
        if tau_brute(n, s * t) != tau_brute(n, s) * tau_brute(n, t):
            return _fail("multiplicativity", cases, f"n={n} s={s} t={t}")
    return CheckResult("multiplicativity", True, cases)


def check_solution_count(per_prime: int = 5) -> CheckResult:
    rng = random.Random(SEED)
    cases = 0
    for p in _primes():
        for _ in range(per_prime):
            n = rng.randrange(1, p)
            cases += 1
            if count_solutions_brute(n, p) != p - 1:
                return _fail("solution-count", cases, f"n={n} p={p}")
    return CheckResult("solution-count", True, cases)


def check_bijection() -> CheckResult:
    cases = 0
    for p in _primes():
        for n in range(1, p):
            region = fundamental_region(n, p)
            for pt in region:
                cases += 1
                if gamma2(gamma1(pt, n), n) != pt:
                    return _fail("bijection", cases, f"point {pt!r} n={n}")
            for t in enumerate_targets(n, p):
                cases += 1
                if gamma1(gamma2(t, n), n) != t:
                    return _fail("bijection", cases, f"target {t!r} n={n}")
    return CheckResult("bijection", True, cases)


def _predicted_class_size(n: int, p: int, u: int) -> int:
    if u == 0:
        return 2 if legendre_symbol(n, p) == 1 else 0
    return {1: 4, 0: 2, -1: 0}[legendre_symbol(4 * n + u * u, p)]


def check_trichotomy() -> CheckResult:
    cases = 0
    for p in _primes():
        for n in range(1, p):
            for u in range(p):
                cases += 1
                modular = modular_distance_class(n, p, u)
                exact = distance_class(n, p, u)
                if len(modular) != _predicted_class_size(n, p, u):
                    return _fail("trichotomy", cases, f"n={n} p={p} u={u}")
                # the integer class is all of the modular one or none of it
                if len(exact) not in (0, len(modular)):
                    return _fail("trichotomy", cases, f"split class n={n} p={p} u={u}")
    return CheckResult("trichotomy", True, cases)


def check_density_decay(n: int = 1, bmax: int = 31, ceiling: float = 10.0) -> CheckResult:
    rows = density_table(n, bmax)
    for previous, row in zip(rows, rows[1:]):
        if not row.ratio < previous.ratio:
            return _fail("density-decay", len(rows), f"ratio rises at B={row.bound}")
    worst = max(row.normalized for row in rows)
    if worst > ceiling:
        return _fail("density-decay", len(rows), f"normalized ratio reaches {worst:.3f}")
    return CheckResult("density-decay", True, len(rows))


CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_tau_closed_form,
    check_distance_count,
    check_prime_power_recursion,
    check_multiplicativity,
    check_solution_count,
    check_bijection,
    check_trichotomy,
    check_density_decay,
)


def run_selftest() -> list[CheckResult]:
    results = []
    for check in CHECKS:
        result = check()
        logger.info("selftest %s: %s over %d cases", result.name, "ok" if result.passed else "FAILED", result.cases)
        results.append(result)
    return results
