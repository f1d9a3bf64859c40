"""How fast τ(n, c)/c shrinks as c runs through odd primorials."""

import logging
import math
from fractions import Fraction

import gmpy2

from ntheory.residues import legendre_symbol, odd_primes_upto
from targets.counting import tau_prime
from targets.models import DensityRow

logger = logging.getLogger(__name__)


def density_table(n: int, bmax: int) -> list[DensityRow]:
    """One row per odd prime bound B <= bmax, c = product of odd primes <= B.

    Once some p <= B divides n every later row is marked invalid; the sweep
    itself never fails.
    """
    rows: list[DensityRow] = []
    modulus = 1
    tau_product = 1
    adjusted_product = 1
    hypothesis = True
    valid = True

    for omega, p in enumerate(odd_primes_upto(bmax), start=1):
        modulus *= p
        if valid and gmpy2.gcd(n, p) != 1:
            logger.warning("density sweep for n=%s stops being valid at p=%s", n, p)
            valid = False

        if not valid:
            rows.append(
                DensityRow(
                    bound=p, modulus_value=modulus, omega=omega, tau=None, ratio=None,
                    normalized=None, normalized_pi=None, adjusted_ratio=None,
                    adjusted_normalized=None, hypothesis_holds=False, valid=False,
                )
            )
            continue

        symbol = legendre_symbol(n, p)
        local = tau_prime(n, p)
        tau_product *= local
        adjusted_product *= local - (1 + symbol) // 2
        if p % 4 == 1 and symbol != -1:
            hypothesis = False

        log_b = math.log(p)
        ratio = Fraction(tau_product, modulus)
        adjusted = Fraction(adjusted_product, modulus)
        rows.append(
            DensityRow(
                bound=p,
                modulus_value=modulus,
                omega=omega,
                tau=tau_product,
                ratio=ratio,
                normalized=float(ratio * 4**omega) / log_b,
                normalized_pi=float(ratio * 4 ** (omega + 1)) / log_b,
                adjusted_ratio=adjusted,
                adjusted_normalized=float(adjusted * 4**omega) / log_b,
                hypothesis_holds=hypothesis,
            )
        )
    return rows
