"""Modular-arithmetic primitives: symbols, square roots, CRT, primorial splits.

All functions are pure and accept arbitrary-precision ints. Results are plain
``int`` (never ``gmpy2.mpz``) so they hash, compare and serialize like the
rest of the code base expects.
"""

import logging
from functools import lru_cache
from itertools import count, product

import gmpy2
from sympy import isprime, primerange

import settings
from ntheory.errors import (
    InputTooSmallError,
    InvalidModulusError,
    NotCoprimeError,
    NotInvertibleError,
    UnsupportedInputError,
)
from ntheory.models import FactoredModulus, PrimorialSplit

logger = logging.getLogger(__name__)


def require_odd_modulus(c: int, minimum: int = 3) -> None:
    if c < minimum or c % 2 == 0:
        raise InvalidModulusError(f"modulus must be odd and >= {minimum}, got {c}")


def require_odd_prime(p: int) -> None:
    require_odd_modulus(p)
    if not isprime(p):
        raise InvalidModulusError(f"{p} is not prime")


def require_coprime(n: int, c: int) -> None:
    if gmpy2.gcd(n, c) != 1:
        raise NotCoprimeError(f"gcd({n}, {c}) = {int(gmpy2.gcd(n, c))}, expected 1")


# ── Symbols ───────────────────────────────────────────────────────────────────

def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    require_odd_modulus(p)
    return int(gmpy2.legendre(a % p, p))


def jacobi_symbol(a: int, c: int) -> int:
    require_odd_modulus(c, minimum=1)
    return int(gmpy2.jacobi(a % c, c))


# ── Square roots ──────────────────────────────────────────────────────────────

def _tonelli_shanks(a: int, p: int) -> int:
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        return pow(a, (p + 1) // 4, p)

    # smallest non-residue
    z = next(z for z in count(2) if legendre_symbol(z, p) == -1)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """Smaller square root of a mod p, or None for a non-residue."""
    require_odd_modulus(p)
    a %= p
    if a == 0:
        return 0
    if legendre_symbol(a, p) != 1:
        return None
    r = _tonelli_shanks(a, p)
    return min(r, p - r)


def _lift_unit_root(u: int, p: int, e: int) -> int | None:
    """Hensel-lift a root of w^2 = u (p ∤ u) from mod p to mod p^e."""
    r = sqrt_mod_prime(u % p, p)
    if r is None:
        return None
    mod = p
    for _ in range(1, e):
        mod *= p
        r = (r - (r * r - u) * int(gmpy2.invert(2 * r, mod))) % mod
    return r


def sqrt_mod_prime_power(a: int, p: int, k: int) -> list[int]:
    """All x in [0, p^k) with x^2 = a mod p^k, sorted."""
    require_odd_modulus(p)
    if k < 1:
        raise UnsupportedInputError(f"exponent must be positive, got {k}")
    pk = p**k
    a %= pk
    if a == 0:
        return list(range(0, pk, p ** ((k + 1) // 2)))

    unit, v = gmpy2.remove(a, p)
    unit, v = int(unit), int(v)
    if v % 2:
        return []
    s = v // 2
    w = _lift_unit_root(unit, p, k - v)
    if w is None:
        return []

    # x = p^s * w' with w' = ±w mod p^(k-2s), free mod p^(k-s)
    inner = p ** (k - v)
    scale = p**s
    roots = [
        scale * (base + j * inner)
        for base in {w, inner - w}
        for j in range(scale)
    ]
    return sorted(roots)


def sqrt_mod_composite(a: int, c: FactoredModulus) -> list[int]:
    per_power = []
    for p, k in c.factors:
        roots = sqrt_mod_prime_power(a % p**k, p, k)
        if not roots:
            return []
        per_power.append([(r, p**k) for r in roots])

    combined = []
    for choice in product(*per_power):
        x, mod = 0, 1
        for r, pk in choice:
            x, mod = crt_pair(x, mod, r, pk), mod * pk
        combined.append(x)
    return sorted(combined)


def is_square_mod_prime_power(a: int, p: int, k: int) -> bool:
    """Whether a is a square mod p^k (0 counts as a square)."""
    a %= p**k
    if a == 0:
        return True
    unit, v = gmpy2.remove(a, p)
    return v % 2 == 0 and legendre_symbol(int(unit), p) == 1


def is_square_mod(a: int, c: FactoredModulus) -> bool:
    return all(is_square_mod_prime_power(a, p, k) for p, k in c.factors)


@lru_cache(maxsize=32)
def squares_mod(c: int) -> frozenset[int]:
    """{x^2 mod c : 0 <= x < c}, materialized; oracle use only."""
    require_odd_modulus(c)
    if c > settings.BRUTE_LIMIT:
        raise UnsupportedInputError(
            f"modulus {c} exceeds the direct-enumeration limit {settings.BRUTE_LIMIT}"
        )
    return frozenset(x * x % c for x in range(c // 2 + 1))


# ── CRT, inverses, integer roots ──────────────────────────────────────────────

def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """Unique x mod m1*m2 with x = r1 mod m1 and x = r2 mod m2."""
    if gmpy2.gcd(m1, m2) != 1:
        raise NotCoprimeError(f"moduli {m1} and {m2} are not coprime")
    t = (r2 - r1) * int(gmpy2.invert(m1, m2)) % m2
    return (r1 + m1 * t) % (m1 * m2)


def mod_inverse(a: int, c: int) -> int:
    if c < 1:
        raise InvalidModulusError(f"modulus must be positive, got {c}")
    if gmpy2.gcd(a, c) != 1:
        raise NotInvertibleError(f"{a} has no inverse modulo {c}")
    return int(gmpy2.invert(a, c))


def isqrt(n: int) -> int:
    """Exact floor square root; never goes through floating point."""
    if n < 0:
        raise UnsupportedInputError(f"isqrt of negative number {n}")
    return int(gmpy2.isqrt(n))


def is_perfect_square(n: int) -> int | None:
    if n < 0:
        return None
    root, rem = gmpy2.isqrt_rem(n)
    return int(root) if rem == 0 else None


# ── Primorials ────────────────────────────────────────────────────────────────

def odd_primes_upto(bound: int) -> list[int]:
    return [int(p) for p in primerange(3, bound + 1)]


def odd_primorial_split(
    n: int,
    r_override: int | None = None,
    relaxed: bool = False,
    max_primes: int | None = None,
) -> PrimorialSplit:
    """Largest 3*5*...*p_m <= isqrt(n), cut at r (default m // 2).

    ``relaxed`` accepts m = 2 instead of the usual m >= 3; ``max_primes``
    caps m below its maximal value.
    """
    root = isqrt(n)
    primes: list[int] = []
    running = 1
    for p in primerange(3, root + 1):
        if running * p > root or (max_primes is not None and len(primes) >= max_primes):
            break
        primes.append(int(p))
        running *= int(p)

    min_m = 2 if relaxed else 3
    if len(primes) < min_m:
        raise InputTooSmallError(
            f"n={n} is too small for a primorial split with m >= {min_m} "
            f"(isqrt(n)={root}); use trial division"
        )

    m = len(primes)
    r = m // 2 if r_override is None else r_override
    if not 0 < r < m:
        raise UnsupportedInputError(f"split index r={r} must satisfy 0 < r < m={m}")

    c_prime = 1
    for p in primes[:r]:
        c_prime *= p
    split = PrimorialSplit(
        m=m, r=r, c_prime=c_prime, c_main=running // c_prime, primes=tuple(primes)
    )
    logger.debug("primorial split for n=%s: %s", n, split)
    return split
