from dataclasses import dataclass, field
from enum import Enum

import settings
from ntheory.errors import UnsupportedInputError


class FactorStatus(str, Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    ABORTED = "aborted"


@dataclass(frozen=True)
class FactorizationConfig:
    r_override: int | None = None
    k_window: int | None = None  # default ceil(isqrt(n) / (c' * c))
    batch_gcd: bool = False
    batch_size: int = field(default_factory=lambda: settings.BATCH_SIZE)
    candidate_limit: int = field(default_factory=lambda: settings.CANDIDATE_LIMIT)
    relaxed_split: bool = False  # allow m = 2 primes
    max_primes: int | None = None
    threads: int = field(default_factory=lambda: settings.THREADS)
    baseline: bool = False

    def __post_init__(self) -> None:
        if self.k_window is not None and self.k_window < 1:
            raise UnsupportedInputError(f"k_window must be >= 1, got {self.k_window}")
        for name in ("candidate_limit", "batch_size", "threads"):
            if getattr(self, name) < 1:
                raise UnsupportedInputError(f"{name} must be >= 1, got {getattr(self, name)}")


@dataclass
class CandidateStats:
    method: str = "targets"  # targets | fermat | square | small-prime
    split_m: int | None = None
    split_r: int | None = None
    c_prime: int | None = None
    c_main: int | None = None
    residue_modulus: int | None = None
    k_window: int = 0
    targets_main: int = 0
    targets_prime: int = 0
    roots_total: int = 0
    candidates_tested: int = 0
    gcd_batches: int = 0
    naive_fermat_steps: int | None = None


@dataclass
class FactorResult:
    n: int
    status: FactorStatus
    factors: tuple[int, int] | None = None
    witness_x: int | None = None
    witness_y: int | None = None
    stats: CandidateStats = field(default_factory=CandidateStats)

    @property
    def found(self) -> bool:
        return self.status is FactorStatus.FOUND

    def is_sound(self) -> bool:
        """Factors multiply back to n and the witness, if any, solves n + x^2 = y^2."""
        if not self.found:
            return self.factors is None
        g, h = self.factors
        if not (1 < g < self.n and g * h == self.n):
            return False
        if self.witness_x is None:
            return True
        x, y = self.witness_x, self.witness_y
        return self.n + x * x == y * y and ((y - x) % g == 0 or (y + x) % g == 0)
