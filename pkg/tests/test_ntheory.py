import pytest
from hypothesis import assume, given, strategies as st
from sympy import primerange
from sympy.ntheory import legendre_symbol as sympy_legendre
from sympy.ntheory.residue_ntheory import sqrt_mod as sympy_sqrt_mod

from ntheory.errors import (
    InputTooSmallError,
    InvalidModulusError,
    NotCoprimeError,
    NotInvertibleError,
    UnsupportedInputError,
)
from ntheory.models import FactoredModulus
from ntheory.residues import (
    crt_pair,
    is_perfect_square,
    is_square_mod,
    is_square_mod_prime_power,
    isqrt,
    jacobi_symbol,
    legendre_symbol,
    mod_inverse,
    odd_primes_upto,
    odd_primorial_split,
    require_odd_modulus,
    sqrt_mod_composite,
    sqrt_mod_prime,
    sqrt_mod_prime_power,
    squares_mod,
)

SMALL_PRIMES = list(primerange(3, 60))


# ── Symbols ───────────────────────────────────────────────────────────────────

def test_legendre_small_cases():
    assert legendre_symbol(2, 7) == 1
    assert legendre_symbol(3, 7) == -1
    assert legendre_symbol(14, 7) == 0
    assert legendre_symbol(-1, 13) == 1


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_legendre_matches_sympy(p):
    for a in range(1, p):
        assert legendre_symbol(a, p) == sympy_legendre(a, p)


def test_jacobi_composite():
    assert jacobi_symbol(2, 15) == 1
    assert jacobi_symbol(7, 15) == -1
    assert jacobi_symbol(5, 1) == 1


def test_even_modulus_rejected():
    with pytest.raises(InvalidModulusError):
        legendre_symbol(1, 8)
    with pytest.raises(InvalidModulusError):
        require_odd_modulus(4)


# ── Square roots ──────────────────────────────────────────────────────────────

def test_sqrt_mod_prime_returns_smaller_root():
    assert sqrt_mod_prime(2, 7) == 3
    assert sqrt_mod_prime(0, 7) == 0
    assert sqrt_mod_prime(3, 7) is None


@pytest.mark.parametrize("p", SMALL_PRIMES + [10007, 65537])
def test_sqrt_mod_prime_squares_back(p):
    for a in {1, 2, 3, p - 1, p // 2}:
        r = sqrt_mod_prime(a, p)
        if legendre_symbol(a, p) == -1:
            assert r is None
        else:
            assert r * r % p == a % p
            assert r <= p - r


@pytest.mark.parametrize("p,k", [(3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (7, 3), (11, 2)])
def test_sqrt_mod_prime_power_matches_scan(p, k):
    pk = p**k
    for a in range(pk):
        expected = [x for x in range(pk) if x * x % pk == a]
        assert sqrt_mod_prime_power(a, p, k) == expected


@pytest.mark.parametrize("p,k", [(5, 2), (13, 2), (3, 5)])
def test_sqrt_mod_prime_power_matches_sympy(p, k):
    pk = p**k
    for a in range(1, pk):
        assert sqrt_mod_prime_power(a, p, k) == sorted(sympy_sqrt_mod(a, pk, all_roots=True) or [])


def test_sqrt_mod_composite():
    c = FactoredModulus.parse("3^2*7")
    for a in range(c.value):
        expected = [x for x in range(c.value) if x * x % c.value == a]
        assert sqrt_mod_composite(a, c) == expected


def test_square_predicates_agree_with_scan():
    for p, k in ((3, 3), (5, 2), (7, 2)):
        pk = p**k
        squares = {x * x % pk for x in range(pk)}
        for a in range(pk):
            assert is_square_mod_prime_power(a, p, k) == (a in squares)
    c = FactoredModulus.parse("3*5*7")
    assert {a for a in range(105) if is_square_mod(a, c)} == squares_mod(105)


def test_squares_mod_seven():
    assert squares_mod(7) == frozenset({0, 1, 2, 4})
    assert squares_mod.cache_info().maxsize <= 32


# ── CRT, inverses, integer roots ──────────────────────────────────────────────

@given(
    st.sampled_from(SMALL_PRIMES),
    st.sampled_from(SMALL_PRIMES),
    st.integers(min_value=0, max_value=10**6),
)
def test_crt_pair_reduces_back(p, q, x):
    assume(p != q)
    r = crt_pair(x % p, p, x % q, q)
    assert 0 <= r < p * q
    assert r == x % (p * q)


def test_crt_pair_needs_coprime_moduli():
    with pytest.raises(NotCoprimeError):
        crt_pair(1, 3, 2, 9)


def test_mod_inverse():
    assert mod_inverse(3, 7) == 5
    with pytest.raises(NotInvertibleError):
        mod_inverse(3, 9)


@given(st.integers(min_value=0, max_value=2**256))
def test_isqrt_brackets(n):
    r = isqrt(n)
    assert r * r <= n < (r + 1) * (r + 1)


@given(st.integers(min_value=0, max_value=2**200))
def test_perfect_square_detection(r):
    assert is_perfect_square(r * r) == r
    if r > 0:
        assert is_perfect_square(r * r + 1) is None


def test_isqrt_negative():
    with pytest.raises(UnsupportedInputError):
        isqrt(-1)
    assert is_perfect_square(-4) is None


# ── Factored moduli and primorial splits ──────────────────────────────────────

def test_factored_modulus_parse():
    c = FactoredModulus.parse("3^2*7")
    assert c.value == 63
    assert c.factors == ((3, 2), (7, 1))
    assert c.prime_powers() == [9, 7]
    assert str(c) == "3^2*7"


@pytest.mark.parametrize("text", ["7*3", "9", "2*3", "3*3"])
def test_factored_modulus_rejects_bad_factorizations(text):
    with pytest.raises(InvalidModulusError):
        FactoredModulus.parse(text)


def test_factored_modulus_rejects_garbage():
    with pytest.raises(UnsupportedInputError):
        FactoredModulus.parse("3^x*7")


def test_odd_primes_upto():
    assert odd_primes_upto(31) == [3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
    assert odd_primes_upto(2) == []


def test_primorial_split_for_large_n():
    split = odd_primorial_split(10**12)
    assert split.primes == (3, 5, 7, 11, 13, 17)
    assert (split.m, split.r) == (6, 3)
    assert (split.c_prime, split.c_main) == (105, 2431)
    assert split.modulus == 255255
    assert split.factored_prime().value == 105
    assert split.factored_main().factors == ((11, 1), (13, 1), (17, 1))


def test_primorial_split_override_and_cap():
    split = odd_primorial_split(10**12, r_override=1, max_primes=4)
    assert split.primes == (3, 5, 7, 11)
    assert (split.c_prime, split.c_main) == (3, 385)
    with pytest.raises(UnsupportedInputError):
        odd_primorial_split(10**12, r_override=6)


def test_primorial_split_small_n():
    with pytest.raises(InputTooSmallError):
        odd_primorial_split(10403)
    split = odd_primorial_split(10403, relaxed=True)
    assert (split.m, split.c_prime, split.c_main) == (2, 3, 5)
