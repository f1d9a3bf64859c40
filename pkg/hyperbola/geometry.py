"""Points, distances and symmetries of the modular hyperbola xy = n mod c."""

import logging
from functools import lru_cache

import gmpy2

import settings
from hyperbola.models import DistanceClass, HyperbolaPoint
from ntheory.errors import InvalidPointError, UnsupportedInputError
from ntheory.residues import (
    legendre_symbol,
    mod_inverse,
    require_coprime,
    require_odd_modulus,
    require_odd_prime,
    sqrt_mod_prime,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=16)
def _unit_inverses(c: int) -> tuple[tuple[int, int], ...]:
    """(x, x^-1 mod c) for every unit x mod c."""
    if c > settings.BRUTE_LIMIT:
        raise UnsupportedInputError(
            f"modulus {c} exceeds the direct-enumeration limit {settings.BRUTE_LIMIT}"
        )
    return tuple((x, mod_inverse(x, c)) for x in range(1, c) if gmpy2.gcd(x, c) == 1)


def _check(n: int, c: int, prime: bool = False) -> None:
    if prime:
        require_odd_prime(c)
    else:
        require_odd_modulus(c)
    require_coprime(n, c)


def _coordinates(n: int, c: int):
    for x, inv in _unit_inverses(c):
        yield x, n * inv % c


def in_fundamental_region(pt: HyperbolaPoint) -> bool:
    """Closed region 0 <= y <= min(x, c - x)."""
    return 0 <= pt.y <= min(pt.x, pt.modulus - pt.x)


# ── Enumeration ───────────────────────────────────────────────────────────────

def hyperbola_points(n: int, c: int) -> frozenset[HyperbolaPoint]:
    _check(n, c)
    return frozenset(HyperbolaPoint(x, y, c) for x, y in _coordinates(n, c))


def distance_set(n: int, c: int) -> list[int]:
    """Sorted distinct |x - y| over the points of H_{n,c}."""
    _check(n, c)
    return sorted({abs(x - y) for x, y in _coordinates(n, c)})


def distance_set_size_formula(n: int, p: int) -> int:
    _check(n, p, prime=True)
    if p % 4 == 1:
        return (p - 1) // 4 + (1 + legendre_symbol(n, p)) // 2
    return (p - 3) // 4 + 1


# ── Distance classes ──────────────────────────────────────────────────────────

def modular_distance_class(n: int, p: int, u: int) -> frozenset[HyperbolaPoint]:
    """Points with x - y = ±u mod p, from Y(Y - u) = n and Y(Y + u) = n.

    Both families share the discriminant 4n + u^2, so the set has 4, 2 or 0
    points as that discriminant is a nonzero square, zero, or a non-residue.
    Its members all share one integer distance, either u or p - u.
    """
    _check(n, p, prime=True)
    if not 0 <= u < p:
        raise UnsupportedInputError(f"distance u={u} must lie in [0, {p})")
    root = sqrt_mod_prime((4 * n + u * u) % p, p)
    if root is None:
        return frozenset()

    half = (p + 1) // 2
    points = set()
    for r in (root, -root):
        y = (u + r) * half % p
        points.add(HyperbolaPoint((y - u) % p, y, p))
        y = (r - u) * half % p
        points.add(HyperbolaPoint((y + u) % p, y, p))
    return frozenset(points)


def distance_class(n: int, p: int, u: int) -> DistanceClass:
    members = modular_distance_class(n, p, u)
    return DistanceClass(u=u, points=frozenset(pt for pt in members if pt.distance == u))


# ── Symmetries and the fundamental region ─────────────────────────────────────

def fundamental_region(n: int, p: int) -> frozenset[HyperbolaPoint]:
    _check(n, p, prime=True)
    return frozenset(
        HyperbolaPoint(x, y, p)
        for x, y in _coordinates(n, p)
        if y <= min(x, p - x)
    )


def reflect_diagonal(pt: HyperbolaPoint) -> HyperbolaPoint:
    return HyperbolaPoint(pt.y, pt.x, pt.modulus)


def reflect_antidiagonal(pt: HyperbolaPoint) -> HyperbolaPoint:
    c = pt.modulus
    return HyperbolaPoint((c - pt.x) % c, (c - pt.y) % c, c)


def symmetry_orbit(pt: HyperbolaPoint) -> frozenset[HyperbolaPoint]:
    # The two reflections commute, so four images close the orbit
    swapped = reflect_diagonal(pt)
    return frozenset(
        {pt, swapped, reflect_antidiagonal(pt), reflect_antidiagonal(swapped)}
    )


def canonical_representative(pt: HyperbolaPoint) -> HyperbolaPoint:
    inside = sorted(q for q in symmetry_orbit(pt) if in_fundamental_region(q))
    if not inside:
        raise InvalidPointError(f"orbit of {pt} misses the fundamental region")
    if len(inside) > 1:
        logger.warning("orbit of %s meets the fundamental region %d times", pt, len(inside))
    return inside[0]
