import argparse
import logging
from dataclasses import asdict

import settings
from cli.output import Reply
from cli.router import Router, arg
from cli.selftest import run_selftest
from factorizer.models import FactorizationConfig
from factorizer.search import factor
from hyperbola.geometry import (
    canonical_representative,
    distance_set,
    distance_set_size_formula,
    fundamental_region,
    hyperbola_points,
)
from ntheory.errors import NumberTheoryError, UnsupportedInputError
from ntheory.models import FactoredModulus
from targets.counting import enumerate_targets, enumerate_targets_factored, gamma1, tau, tau_brute
from targets.density import density_table

logger = logging.getLogger(__name__)

router = Router()

_N = arg("--n", type=int, required=True, help="the integer n")
_MOD = arg("--mod", required=True, help='modulus: an integer or a factorization such as "3^2*7"')
_P = arg("--p", type=int, required=True, help="odd prime modulus")
_LIMIT = arg("--limit", type=int, default=None, help="truncate long lists to this many entries")


def _integer(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UnsupportedInputError(f"modulus {text!r} is neither an integer nor a factorization") from None


def _is_factorization(text: str) -> bool:
    return "*" in text or "^" in text


def _truncate(items: list, limit: int | None) -> tuple[list, bool]:
    if limit is not None and len(items) > limit:
        return items[:limit], True
    return items, False


# ── τ and targets ─────────────────────────────────────────────────────────────

@router.command(
    "tau", "count targets mod c",
    _N, _MOD,
    arg("--check", action="store_true", help="compare closed form with brute force"),
)
def cmd_tau(args: argparse.Namespace, reply: Reply) -> int:
    text = args.mod.strip()
    payload: dict = {}

    if _is_factorization(text):
        modulus = FactoredModulus.parse(text)
        value = tau(args.n, modulus)
        payload.update(mode="formula", modulus=modulus.value, formula=value)
        if args.check and modulus.value <= settings.BRUTE_LIMIT:
            payload["brute"] = tau_brute(args.n, modulus.value)
    else:
        c = _integer(text)
        value = tau_brute(args.n, c)
        payload.update(mode="brute", modulus=c, brute=value)
        if args.check:
            try:
                payload["formula"] = tau(args.n, FactoredModulus.parse(text))
            except NumberTheoryError as exc:
                # composite integer or p | n: the closed form does not apply
                logger.info("no closed form for n=%s mod %s: %s", args.n, c, exc)

    payload["tau"] = value
    agreement = None
    if "brute" in payload and "formula" in payload:
        agreement = payload["brute"] == payload["formula"]
    payload["agreement"] = agreement

    reply.answer({"n": args.n, "mod": text, "check": args.check}, payload)
    if agreement is False:
        logger.error("closed form %s disagrees with enumeration %s", payload["formula"], payload["brute"])
        return 1
    return 0


@router.command("targets", "list the targets (a, b) mod c", _N, _MOD, _LIMIT)
def cmd_targets(args: argparse.Namespace, reply: Reply) -> int:
    text = args.mod.strip()
    if _is_factorization(text):
        found = enumerate_targets_factored(args.n, FactoredModulus.parse(text))
    else:
        found = enumerate_targets(args.n, _integer(text))

    shown, truncated = _truncate([t.as_pair() for t in found], args.limit)
    reply.answer(
        {"n": args.n, "mod": text, "limit": args.limit},
        {"count": len(found), "targets": shown, "truncated": truncated},
    )
    return 0


# ── Hyperbola geometry ────────────────────────────────────────────────────────

@router.command("distances", "distance set D_{n,p} and the fundamental region", _N, _P)
def cmd_distances(args: argparse.Namespace, reply: Reply) -> int:
    n, p = args.n, args.p
    distances = distance_set(n, p)
    region = sorted(fundamental_region(n, p))
    reply.answer(
        {"n": n, "p": p},
        {
            "distances": distances,
            "size": len(distances),
            "formula": distance_set_size_formula(n, p),
            "region": [
                {"point": pt.as_pair(), "target": gamma1(pt, n).as_pair()} for pt in region
            ],
        },
    )
    return 0


@router.command(
    "hyperbola", "points of xy = n mod c",
    _N, _MOD, _LIMIT,
    arg("--orbits", action="store_true", help="add each point's fundamental-region representative"),
)
def cmd_hyperbola(args: argparse.Namespace, reply: Reply) -> int:
    c = _integer(args.mod)
    every = sorted(hyperbola_points(args.n, c))
    points, truncated = _truncate(every, args.limit)
    payload = {
        "count": len(every),
        "points": [pt.as_pair() for pt in points],
        "truncated": truncated,
    }
    if args.orbits:
        payload["canonical"] = [canonical_representative(pt).as_pair() for pt in points]
    reply.answer({"n": args.n, "mod": c, "limit": args.limit, "orbits": args.orbits}, payload)
    return 0


# ── Factoring ─────────────────────────────────────────────────────────────────

@router.command(
    "factor", "factor n with target-guided Fermat search",
    _N,
    arg("--r", type=int, default=None, help="primes in c' (default: half of the split)"),
    arg("--relaxed-split", action="store_true", help="allow a split of only two primes"),
    arg("--max-primes", type=int, default=None, help="cap the number of split primes"),
    arg("--k-window", type=int, default=None, help="largest k in x = rho + M*k"),
    arg("--batch-gcd", action="store_true", help="test candidates by batched gcd"),
    arg("--threads", type=int, default=None, help="worker threads"),
    arg("--candidate-limit", type=int, default=None, help="abort after this many candidates"),
    arg("--baseline", action="store_true", help="also count naive Fermat steps"),
)
def cmd_factor(args: argparse.Namespace, reply: Reply) -> int:
    overrides = {
        "threads": args.threads,
        "candidate_limit": args.candidate_limit,
    }
    cfg = FactorizationConfig(
        r_override=args.r,
        k_window=args.k_window,
        batch_gcd=args.batch_gcd,
        relaxed_split=args.relaxed_split,
        max_primes=args.max_primes,
        baseline=args.baseline,
        **{k: v for k, v in overrides.items() if v is not None},
    )
    result = factor(args.n, cfg)

    witness = None
    if result.witness_x is not None:
        witness = [result.witness_x, result.witness_y]
    reply.answer(
        {"n": args.n, "config": asdict(cfg)},
        {
            "status": result.status,
            "factors": result.factors,
            "witness": witness,
            "stats": result.stats,
        },
    )
    return 0 if result.found else 2


# ── Density sweep ─────────────────────────────────────────────────────────────

@router.command(
    "density", "τ(n, c)/c over odd primorials c",
    _N,
    arg("--Bmax", dest="bmax", type=int, required=True, help="largest prime bound"),
    arg("--format", choices=("json", "csv"), default="json"),
)
def cmd_density(args: argparse.Namespace, reply: Reply) -> int:
    rows = [asdict(row) for row in density_table(args.n, args.bmax)]
    if args.format == "csv":
        reply.answer_csv(rows)
        return 0
    inputs = {"n": args.n, "Bmax": args.bmax}
    for row in rows:
        reply.answer(inputs, row)
    return 0


@router.command("selftest", "run the built-in oracle checks")
def cmd_selftest(args: argparse.Namespace, reply: Reply) -> int:
    results = run_selftest()
    passed = all(r.passed for r in results)
    reply.answer({}, {"passed": passed, "checks": results})
    return 0 if passed else 1
