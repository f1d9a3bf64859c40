"""Target-guided Fermat factorization and the plain Fermat baseline.

Candidates x for n + x^2 = y^2 are restricted to residues mod M = c' * c whose
squares reduce to the a-component of a target both mod c and mod c'. Those
residues are then swept through the window x = rho + M * k, 0 <= k <= k_window.
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from factorizer.models import CandidateStats, FactorizationConfig, FactorResult, FactorStatus
from ntheory.errors import InputTooSmallError, SmallPrimeFactor, UnsupportedInputError
from ntheory.models import FactoredModulus, PrimorialSplit
from ntheory.residues import (
    is_perfect_square,
    isqrt,
    mod_inverse,
    odd_primorial_split,
    sqrt_mod_composite,
)
from targets.counting import enumerate_targets_factored

logger = logging.getLogger(__name__)


# ── Candidate residues ────────────────────────────────────────────────────────

@dataclass(frozen=True)
class _CandidateTable:
    targets_main: int
    targets_prime: int
    residues: list[int]


def _target_roots(n: int, c: FactoredModulus) -> tuple[int, list[int]]:
    """(τ(n, c), every square root mod c of every target's a-component)."""
    targets = enumerate_targets_factored(n, c)
    roots = [alpha for t in targets for alpha in sqrt_mod_composite(t.a, c)]
    return len(targets), roots


def _candidate_table(n: int, split: PrimorialSplit) -> _CandidateTable:
    common = int(gmpy2.gcd(n, split.modulus))
    if common != 1:
        raise SmallPrimeFactor(next(p for p in split.primes if common % p == 0), n)

    tau_main, main_roots = _target_roots(n, split.factored_main())
    tau_prime, prime_roots = _target_roots(n, split.factored_prime())

    # x = alpha + c * t with t = d (beta - alpha) mod c', d = c^-1 mod c'
    c, c_prime = split.c_main, split.c_prime
    d = mod_inverse(c, c_prime)
    residues = sorted(
        {alpha + c * (d * (beta - alpha) % c_prime) for alpha in main_roots for beta in prime_roots}
    )
    logger.debug(
        "n=%s: %d targets mod %s, %d mod %s, %d residues mod %s",
        n, tau_main, c, tau_prime, c_prime, len(residues), split.modulus,
    )
    return _CandidateTable(targets_main=tau_main, targets_prime=tau_prime, residues=residues)


def residue_candidates(n: int, split: PrimorialSplit) -> list[int]:
    """Residues rho mod c'c that any Fermat witness x must reduce to.

    Raises SmallPrimeFactor when a prime of the split divides n.
    """
    return _candidate_table(n, split).residues


def residue_density(n: int, split: PrimorialSplit) -> Fraction:
    return Fraction(len(residue_candidates(n, split)), split.modulus)


# ── Witness checks ────────────────────────────────────────────────────────────

def fermat_check(n: int, x: int) -> tuple[int, int] | None:
    """(y, gcd(y - x, n)) when n + x^2 = y^2, else None."""
    y = is_perfect_square(n + x * x)
    if y is None:
        return None
    return y, int(gmpy2.gcd(y - x, n))


def _witness(n: int, x: int) -> tuple[int, int] | None:
    hit = fermat_check(n, x)
    if hit is None:
        return None
    y, g = hit
    if not 1 < g < n:
        g = int(gmpy2.gcd(y + x, n))
    return (y, g) if 1 < g < n else None


def witness_from_factor(n: int, g: int) -> tuple[int, int]:
    """(x, y) with n + x^2 = y^2 built from the split n = g * (n // g)."""
    b = n // g
    return abs(b - g) // 2, (b + g) // 2


def _found(n: int, g: int, stats: CandidateStats, x: int | None = None, y: int | None = None) -> FactorResult:
    if x is None:
        x, y = witness_from_factor(n, g)
    return FactorResult(
        n=n,
        status=FactorStatus.FOUND,
        factors=tuple(sorted((g, n // g))),
        witness_x=x,
        witness_y=y,
        stats=stats,
    )


# ── Window sweep ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class _Hit:
    k: int
    rho: int
    g: int
    x: int | None = None
    y: int | None = None


@dataclass(frozen=True)
class _StripeOutcome:
    tested: int
    out_of_budget: bool
    batches: int


class _Sweep:
    """Shared state of one sweep; stripes of residues may run on separate threads.

    The reported witness is always the one with the smallest (k, rho), no
    matter how residues were striped.
    """

    def __init__(self, n: int, modulus: int, k_window: int, cfg: FactorizationConfig) -> None:
        self.n = n
        self.modulus = modulus
        self.k_window = k_window
        self.cfg = cfg
        self.best: _Hit | None = None
        self._lock = threading.Lock()

    def _passed(self, k: int, rho: int) -> bool:
        best = self.best
        return best is not None and (k, rho) > (best.k, best.rho)

    def _offer(self, hit: _Hit) -> None:
        with self._lock:
            if self.best is None or (hit.k, hit.rho) < (self.best.k, self.best.rho):
                self.best = hit

    def run(self, stripe: list[int], budget: int) -> _StripeOutcome:
        scan = self._scan_batched if self.cfg.batch_gcd else self._scan_single
        tested = batches = 0
        for k in range(self.k_window + 1):
            if not stripe or self._passed(k, stripe[0]):
                break
            tested, batches, done, out_of_budget = scan(k, stripe, budget, tested, batches)
            if out_of_budget:
                return _StripeOutcome(tested, True, batches)
            if done:
                break
        return _StripeOutcome(tested, False, batches)

    def _scan_single(self, k, stripe, budget, tested, batches):
        base = k * self.modulus
        for rho in stripe:
            if self._passed(k, rho):
                return tested, batches, True, False
            if tested >= budget:
                return tested, batches, False, True
            tested += 1
            x = base + rho
            hit = _witness(self.n, x)
            if hit:
                self._offer(_Hit(k=k, rho=rho, g=hit[1], x=x, y=hit[0]))
                return tested, batches, True, False
        return tested, batches, False, False

    def _scan_batched(self, k, stripe, budget, tested, batches):
        n = self.n
        base = k * self.modulus
        size = self.cfg.batch_size
        for start in range(0, len(stripe), size):
            chunk = stripe[start : start + size]
            if self._passed(k, chunk[0]):
                return tested, batches, True, False
            room = budget - tested
            if room <= 0:
                return tested, batches, False, True
            chunk = chunk[:room]

            f = 1
            for rho in chunk:
                x = base + rho
                f = f * (isqrt(n + x * x) - x) % n
            batches += 1
            g = int(gmpy2.gcd(f, n))
            if g == 1:
                tested += len(chunk)
                continue
            if g == n:
                logger.warning("batch gcd at k=%s equals n, rescanning %d candidates", k, len(chunk))

            for i, rho in enumerate(chunk):
                x = base + rho
                hit = _witness(n, x)
                if hit:
                    self._offer(_Hit(k=k, rho=rho, g=hit[1], x=x, y=hit[0]))
                    return tested + i + 1, batches, True, False
            tested += len(chunk)
            if 1 < g < n:
                # product exposed a factor but no candidate is an exact witness; _found derives one from g
                self._offer(_Hit(k=k, rho=chunk[0], g=g))
                return tested, batches, True, False
        return tested, batches, False, False


# ── Entry points ──────────────────────────────────────────────────────────────

def _check_input(n: int) -> None:
    if n % 2 == 0:
        raise UnsupportedInputError(f"n={n} is even")
    if n < 9:
        raise UnsupportedInputError(f"n={n} is below 9")


def naive_fermat(n: int, step_limit: int) -> FactorResult:
    """Scan x = 0, 1, ... for n + x^2 = y^2 with a nontrivial split.

    The smallest odd factor is at least 3, so no useful witness exceeds (n - 9) // 6.
    """
    _check_input(n)
    stats = CandidateStats(method="fermat")
    for x in range((n - 9) // 6 + 1):
        if stats.candidates_tested >= step_limit:
            logger.info("naive Fermat on n=%s hit the step limit %s", n, step_limit)
            stats.naive_fermat_steps = stats.candidates_tested
            return FactorResult(n=n, status=FactorStatus.ABORTED, stats=stats)
        stats.candidates_tested += 1
        hit = _witness(n, x)
        if hit:
            stats.naive_fermat_steps = stats.candidates_tested
            return _found(n, hit[1], stats, x=x, y=hit[0])
    stats.naive_fermat_steps = stats.candidates_tested
    return FactorResult(n=n, status=FactorStatus.EXHAUSTED, stats=stats)


def factor(n: int, cfg: FactorizationConfig | None = None) -> FactorResult:
    cfg = cfg or FactorizationConfig()
    _check_input(n)

    root = is_perfect_square(n)
    if root is not None:
        return _found(n, root, CandidateStats(method="square"), x=0, y=root)

    try:
        split = odd_primorial_split(n, cfg.r_override, cfg.relaxed_split, cfg.max_primes)
    except InputTooSmallError as exc:
        logger.warning("%s; falling back to naive Fermat", exc)
        return naive_fermat(n, cfg.candidate_limit)

    stats = CandidateStats(
        split_m=split.m,
        split_r=split.r,
        c_prime=split.c_prime,
        c_main=split.c_main,
        residue_modulus=split.modulus,
    )
    try:
        table = _candidate_table(n, split)
    except SmallPrimeFactor as small:
        stats.method = "small-prime"
        return _found(n, small.prime, stats)

    modulus = split.modulus
    k_window = cfg.k_window or max(1, -(-isqrt(n) // modulus))
    stats.k_window = k_window
    stats.targets_main = table.targets_main
    stats.targets_prime = table.targets_prime
    stats.roots_total = len(table.residues)
    logger.info(
        "factoring n=%s: M=%s (m=%s, r=%s), %d residues, k_window=%s",
        n, modulus, split.m, split.r, len(table.residues), k_window,
    )

    sweep = _Sweep(n, modulus, k_window, cfg)
    if cfg.threads == 1:
        outcomes = [sweep.run(table.residues, cfg.candidate_limit)]
    else:
        stripes = [table.residues[i :: cfg.threads] for i in range(cfg.threads)]
        budget = max(1, cfg.candidate_limit // cfg.threads)
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            outcomes = list(pool.map(lambda stripe: sweep.run(stripe, budget), stripes))

    stats.candidates_tested = sum(o.tested for o in outcomes)
    stats.gcd_batches = sum(o.batches for o in outcomes)
    if cfg.baseline:
        stats.naive_fermat_steps = naive_fermat(n, cfg.candidate_limit).stats.candidates_tested

    if sweep.best is not None:
        best = sweep.best
        return _found(n, best.g, stats, x=best.x, y=best.y)
    if any(o.out_of_budget for o in outcomes):
        logger.info("n=%s: candidate limit %s reached", n, cfg.candidate_limit)
        return FactorResult(n=n, status=FactorStatus.ABORTED, stats=stats)
    return FactorResult(n=n, status=FactorStatus.EXHAUSTED, stats=stats)
