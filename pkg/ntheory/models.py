import re
from dataclasses import dataclass
from math import prod

from sympy import isprime

from ntheory.errors import InvalidModulusError, UnsupportedInputError

_FACTOR_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


@dataclass(frozen=True)
class FactoredModulus:
    """Odd modulus together with its full prime-power factorization."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise InvalidModulusError("a factored modulus needs at least one prime")
        previous = 2
        for p, k in self.factors:
            if p <= previous:
                raise InvalidModulusError(
                    f"primes must be odd and strictly increasing, got {p} after {previous}"
                )
            if k < 1:
                raise InvalidModulusError(f"exponent of {p} must be positive, got {k}")
            if not isprime(p):
                raise InvalidModulusError(f"{p} is not prime")
            previous = p
        if prod(p**k for p, k in self.factors) != self.value:
            raise InvalidModulusError(
                f"factorization {self.render()} does not multiply to {self.value}"
            )

    @classmethod
    def from_factors(cls, factors) -> "FactoredModulus":
        pairs = tuple((int(p), int(k)) for p, k in factors)
        return cls(value=prod(p**k for p, k in pairs), factors=pairs)

    @classmethod
    def from_primes(cls, primes) -> "FactoredModulus":
        """Squarefree modulus from distinct odd primes (any order)."""
        return cls.from_factors((p, 1) for p in sorted(primes))

    @classmethod
    def parse(cls, text: str) -> "FactoredModulus":
        """Parse ``"3^2*7"``; primes must be written in ascending order."""
        pairs = []
        for chunk in text.split("*"):
            m = _FACTOR_RE.match(chunk)
            if not m:
                raise UnsupportedInputError(f"cannot parse factor {chunk!r} in {text!r}")
            pairs.append((int(m.group(1)), int(m.group(2) or 1)))
        return cls.from_factors(pairs)

    def prime_powers(self) -> list[int]:
        return [p**k for p, k in self.factors]

    def render(self) -> str:
        return "*".join(str(p) if k == 1 else f"{p}^{k}" for p, k in self.factors)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class PrimorialSplit:
    """Product of the first m odd primes cut into c' = p_1..p_r and c = p_{r+1}..p_m."""

    m: int
    r: int
    c_prime: int
    c_main: int
    primes: tuple[int, ...]

    @property
    def modulus(self) -> int:
        return self.c_prime * self.c_main

    def factored_prime(self) -> FactoredModulus:
        return FactoredModulus.from_primes(self.primes[: self.r])

    def factored_main(self) -> FactoredModulus:
        return FactoredModulus.from_primes(self.primes[self.r :])
