from dataclasses import dataclass

from ntheory.errors import InvalidPointError


@dataclass(frozen=True, order=True)
class HyperbolaPoint:
    """Point (x, y) of the modular hyperbola xy = n mod ``modulus``."""

    x: int
    y: int
    modulus: int

    @classmethod
    def on(cls, n: int, x: int, y: int, modulus: int) -> "HyperbolaPoint":
        """Build a point, checking it lies on H_{n,modulus}."""
        if not (0 <= x < modulus and 0 <= y < modulus):
            raise InvalidPointError(f"({x}, {y}) is outside [0, {modulus})^2")
        if (x * y - n) % modulus:
            raise InvalidPointError(f"({x}, {y}) is not on xy = {n} mod {modulus}")
        return cls(x=x, y=y, modulus=modulus)

    @property
    def distance(self) -> int:
        return abs(self.x - self.y)

    def as_pair(self) -> tuple[int, int]:
        return self.x, self.y

    def __repr__(self) -> str:
        return f"<HyperbolaPoint ({self.x},{self.y}) mod {self.modulus}>"


@dataclass(frozen=True)
class DistanceClass:
    """A_u: every hyperbola point at integer distance |x - y| = u."""

    u: int
    points: frozenset[HyperbolaPoint]

    def __len__(self) -> int:
        return len(self.points)

    def sorted_points(self) -> list[HyperbolaPoint]:
        return sorted(self.points)
