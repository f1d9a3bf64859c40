"""Exceptions raised by the number-theory layer and everything built on it."""


class NumberTheoryError(ValueError):
    """Base class; the CLI turns any of these into exit code 1."""


class InvalidModulusError(NumberTheoryError):
    pass


class NotCoprimeError(NumberTheoryError):
    pass


class NotInvertibleError(NumberTheoryError):
    pass


class UnsupportedInputError(NumberTheoryError):
    pass


class InvalidPointError(NumberTheoryError):
    pass


class InvalidTargetError(NumberTheoryError):
    pass


class SmallPrimeFactor(NumberTheoryError):
    """A prime of the search modulus divides n; carries that prime."""

    def __init__(self, prime: int, n: int) -> None:
        super().__init__(f"{prime} divides {n}")
        self.prime = prime
        self.n = n


class InputTooSmallError(UnsupportedInputError):
    """n is below the range a primorial split can serve."""
