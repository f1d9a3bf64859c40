"""Targets T(n, c) and their count τ(n, c).

Closed forms for primes and prime powers are kept strictly apart from the
brute-force enumerators; the latter are the oracles the formulas are tested
against.
"""

import logging
from collections import Counter
from math import prod

import settings
from hyperbola.geometry import in_fundamental_region, modular_distance_class
from hyperbola.models import HyperbolaPoint
from ntheory.errors import InvalidPointError, InvalidTargetError, UnsupportedInputError
from ntheory.models import FactoredModulus
from ntheory.residues import (
    crt_pair,
    is_square_mod_prime_power,
    legendre_symbol,
    mod_inverse,
    require_coprime,
    require_odd_modulus,
    require_odd_prime,
    sqrt_mod_prime,
    squares_mod,
)
from targets.models import Target

logger = logging.getLogger(__name__)


def _check_prime(n: int, p: int) -> None:
    require_odd_prime(p)
    require_coprime(n, p)


# ── Enumeration (oracles) ─────────────────────────────────────────────────────

def enumerate_targets(n: int, c: int) -> list[Target]:
    """Every target (a, b, c) for n, by direct scan over the squares mod c."""
    require_odd_modulus(c)
    squares = squares_mod(c)
    return [
        Target(a, (n + a) % c, c)
        for a in sorted(squares)
        if (n + a) % c in squares
    ]


def enumerate_targets_factored(n: int, c: FactoredModulus) -> list[Target]:
    """Targets mod c glued together by CRT from the prime-power target lists."""
    combined = [(0, 0)]
    mod = 1
    for pk in c.prime_powers():
        local = enumerate_targets(n, pk)
        combined = [
            (crt_pair(a, mod, t.a, pk), crt_pair(b, mod, t.b, pk))
            for a, b in combined
            for t in local
        ]
        mod *= pk
    return sorted(Target(a, b, mod) for a, b in combined)


def tau_brute(n: int, c: int) -> int:
    return len(enumerate_targets(n, c))


def count_solutions_brute(n: int, p: int) -> int:
    """#{(x, y) in [0, p)^2 : n + x^2 = y^2 mod p}; always p - 1."""
    _check_prime(n, p)
    if p > settings.BRUTE_LIMIT:
        raise UnsupportedInputError(f"p={p} is beyond the direct-scan limit")
    root_count = Counter(y * y % p for y in range(p))
    return sum(root_count[(n + x * x) % p] for x in range(p))


def solutions_per_target(n: int, p: int) -> dict[Target, int]:
    """How many solutions of n + x^2 = y^2 mod p reduce to each target."""
    _check_prime(n, p)
    root_count = Counter(y * y % p for y in range(p))
    return {t: root_count[t.a] * root_count[t.b] for t in enumerate_targets(n, p)}


# ── Closed forms ──────────────────────────────────────────────────────────────

def s_p(n: int, p: int) -> int:
    """How many of n and -n are squares mod p."""
    _check_prime(n, p)
    return (1 + legendre_symbol(n, p)) // 2 + (1 + legendre_symbol(-n, p)) // 2


def zero_component_targets(n: int, p: int) -> int:
    """Targets (0, b, p) or (a, 0, p); the closed form says s_p(n)."""
    return sum(1 for t in enumerate_targets(n, p) if t.has_zero)


def tau_prime(n: int, p: int) -> int:
    # p - 1 solutions: 2 for each of the s_p(n) zero-component targets, 4 for the rest
    s = s_p(n, p)
    return (p - 1 - 2 * s) // 4 + s


def tau_prime_power(n: int, p: int, k: int) -> int:
    if k < 1:
        raise UnsupportedInputError(f"exponent must be positive, got {k}")
    tau = tau_prime(n, p)
    s = s_p(n, p)
    nonzero_squares = (p - 1) // 2
    for j in range(1, k):
        if j % 2 == 0:
            tau = (tau - s) * p + s * (nonzero_squares + 1)
        else:
            tau = (tau - s) * p + s
    return tau


def tau(n: int, c: FactoredModulus) -> int:
    """Multiplicative over the prime-power factorization of c."""
    require_coprime(n, c.value)
    return prod(tau_prime_power(n, p, k) for p, k in c.factors)


def lift_targets(n: int, p: int, k: int, t: Target) -> list[Target]:
    """Targets mod p^(k+1) reducing to t mod p^k."""
    _check_prime(n, p)
    pk = p**k
    if (
        t.modulus != pk
        or (n + t.a - t.b) % pk
        or not is_square_mod_prime_power(t.a, p, k)
        or not is_square_mod_prime_power(t.b, p, k)
    ):
        raise InvalidTargetError(f"{t!r} is not a target for n={n} mod {p}^{k}")

    upper = pk * p
    lifted = []
    for i in range(p):
        a = t.a + i * pk
        b = (n + a) % upper
        if is_square_mod_prime_power(a, p, k + 1) and is_square_mod_prime_power(b, p, k + 1):
            lifted.append(Target(a, b, upper))
    return sorted(lifted)


# ── Correspondence with the fundamental region ────────────────────────────────

def gamma1(pt: HyperbolaPoint, n: int) -> Target:
    """(x, y) -> (4^-1 (x - y)^2, 4^-1 (x + y)^2, p)."""
    p = pt.modulus
    _check_prime(n, p)
    if (pt.x * pt.y - n) % p:
        raise InvalidPointError(f"{pt!r} is not on xy = {n} mod {p}")
    if not in_fundamental_region(pt):
        raise InvalidPointError(f"{pt!r} is outside the fundamental region")
    inv4 = mod_inverse(4, p)
    return Target(inv4 * (pt.x - pt.y) ** 2 % p, inv4 * (pt.x + pt.y) ** 2 % p, p)


def gamma2(t: Target, n: int) -> HyperbolaPoint:
    """Inverse of gamma1: the fundamental-region point at distance ±2α mod p."""
    p = t.modulus
    _check_prime(n, p)
    alpha = sqrt_mod_prime(t.a, p)
    if (n + t.a - t.b) % p or alpha is None or sqrt_mod_prime(t.b, p) is None:
        raise InvalidTargetError(f"{t!r} is not a target for n={n}")

    # 2α mod p may be the wrapped distance p - |x - y|; the modular class covers both
    inside = [
        pt for pt in modular_distance_class(n, p, 2 * alpha % p) if in_fundamental_region(pt)
    ]
    if len(inside) != 1:
        raise InvalidTargetError(
            f"{t!r} meets the fundamental region in {len(inside)} points"
        )
    return inside[0]
