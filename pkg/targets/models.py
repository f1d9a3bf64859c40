from dataclasses import dataclass
from fractions import Fraction

from ntheory.errors import InvalidTargetError


@dataclass(frozen=True, order=True)
class Target:
    """Residues a, b mod c, both squares (0 allowed), with n + a = b mod c."""

    a: int
    b: int
    modulus: int

    @classmethod
    def certify(cls, n: int, a: int, b: int, modulus: int, squares=None) -> "Target":
        """Build a target for n, checking the congruence and, if given, squareness.

        ``squares`` is a predicate ``residue -> bool``.
        """
        if not (0 <= a < modulus and 0 <= b < modulus):
            raise InvalidTargetError(f"({a}, {b}) is outside [0, {modulus})")
        if (n + a - b) % modulus:
            raise InvalidTargetError(f"{n} + {a} != {b} mod {modulus}")
        if squares is not None and not (squares(a) and squares(b)):
            raise InvalidTargetError(f"({a}, {b}) are not both squares mod {modulus}")
        return cls(a=a, b=b, modulus=modulus)

    @property
    def has_zero(self) -> bool:
        return self.a == 0 or self.b == 0

    def as_pair(self) -> tuple[int, int]:
        return self.a, self.b

    def __repr__(self) -> str:
        return f"<Target ({self.a},{self.b},{self.modulus})>"


@dataclass(frozen=True)
class DensityRow:
    """τ(n, c)/c for c the odd primorial up to the bound ``bound``."""

    bound: int
    modulus_value: int
    omega: int  # odd primes <= bound
    tau: int | None
    ratio: Fraction | None
    normalized: float | None  # ratio * 4^omega / log(bound)
    normalized_pi: float | None  # ratio * 4^(omega + 1) / log(bound), counting 2
    adjusted_ratio: Fraction | None
    adjusted_normalized: float | None
    hypothesis_holds: bool
    valid: bool = True
