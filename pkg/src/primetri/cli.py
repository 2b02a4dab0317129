"""Command-line front end.

Reports go to stdout as JSON with sorted keys; progress goes to stderr.
Exit status: 0 ok, 1 fixture (or cross-validation) mismatch, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict
from typing import List, Optional

from . import fixtures
from .qseries import MIN_CONJ12_LIMIT, conj12_check
from .representation import (
    MIXED_VARIANTS,
    FormSpec,
    NFilter,
    XDomain,
    exceptional_set_Sma,
    exceptional_set_Smar,
    exceptions,
    largest_exception,
    mixed_check,
)
from .sieve import SieveLimitError, build_sieve
from .witness import (
    WitnessConditionError,
    construct_even,
    construct_odd,
    family_members_in_S,
    required_sieve_limit,
)

log = logging.getLogger("primetri")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _prime_class(text: str) -> tuple[int, int]:
    try:
        r, d = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected R,D, got {text!r}")
    if d < 1:
        raise argparse.ArgumentTypeError("modulus D must be positive")
    return r, d


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _sieve(limit: int):
    log.info("sieving primes up to %d", limit)
    return build_sieve(limit)


def _compare(values: List[int], fixture: Optional[str]) -> Optional[bool]:
    if fixture is None:
        return None
    expected = fixtures.load(fixture)
    ok = values == expected
    if not ok:
        extra = sorted(set(values) - set(expected))
        missing = sorted(set(expected) - set(values))
        log.warning("fixture mismatch: unexpected %s, missing %s", extra[:20], missing[:20])
    return ok


def cmd_exceptions(args) -> dict:
    r, d = args.prime_class
    spec = FormSpec(
        c=args.c, m=args.m, r=r, d=d,
        allow_zero_prime=args.allow_zero,
        x_domain=args.x_domain,
        n_filter=NFilter(odd_only=args.odd_only, coprime_to=args.coprime_to,
                         greater_than=args.greater_than),
    )
    s = _sieve(args.limit // args.c)
    report = exceptions(spec, args.limit, s, workers=args.threads)
    return {
        "params": spec.describe(),
        "limit": args.limit,
        "sieve_limit": s.limit,
        "result": {"exceptions": report.exceptions, "count": len(report),
                   "complete_below": report.complete_below},
        "fixture_match": _compare(report.exceptions, args.fixture),
        "_list": report.exceptions,
    }


def cmd_sets(args) -> dict:
    params = {"a": args.a, "m": args.m, "r": args.r}
    if args.largest:
        s = _sieve(args.limit >> args.a)
        value = largest_exception(args.a, args.limit, s, workers=args.threads)
        result = {"largest_exception": value}
        listing = [] if value is None else [value]
    else:
        if args.m is None:
            raise UsageError("sets needs --m unless --largest is given")
        if args.r is None:
            s = _sieve(args.limit >> args.a)
            listing = exceptional_set_Sma(args.m, args.a, args.limit, s, workers=args.threads)
        else:
            s = _sieve((args.m * args.limit + args.r) >> args.a)
            listing = exceptional_set_Smar(args.m, args.a, args.r, args.limit, s, workers=args.threads)
        result = {"set": listing, "count": len(listing)}
    return {
        "params": params,
        "limit": args.limit,
        "sieve_limit": s.limit,
        "result": result,
        "fixture_match": _compare(listing, args.fixture),
        "_list": listing,
    }


def cmd_witness(args) -> dict:
    if args.odd:
        w = construct_odd(args.m, args.a, args.r)
    else:
        w = construct_even(args.m, args.r)
    s = _sieve(required_sieve_limit(w, args.kmax))
    rows = family_members_in_S(w, args.kmax, s)
    members = [row.n_k for row in rows if row.in_S]
    return {
        "params": {"branch": "odd" if args.odd else "even", "m": args.m, "a": w.a,
                   "r": args.r, "kmax": args.kmax},
        "limit": args.kmax,
        "sieve_limit": s.limit,
        "result": {
            "witness": asdict(w),
            "exceptional_set_modulus": w.modulus,
            "rows": [row.as_dict() for row in rows],
            "identities_hold": all(row.lhs == row.rhs for row in rows),
            "members_in_S": members,
        },
        "fixture_match": None,
        "_list": members,
    }


def cmd_theta(args) -> dict:
    if args.limit < MIN_CONJ12_LIMIT:
        raise UsageError(f"theta needs --limit >= {MIN_CONJ12_LIMIT}")
    lists = conj12_check(args.limit)
    result = {"lists": lists, "sizes": {k: len(v) for k, v in lists.items()}}
    verdict = None
    if args.cross_validate:
        result["cross_validation"] = {
            k: v == mixed_check(k, args.limit).exceptions for k, v in lists.items()
        }
        verdict = all(result["cross_validation"].values())
    return {
        "params": {"cross_validate": args.cross_validate},
        "limit": args.limit,
        "result": result,
        "fixture_match": verdict,
        "_list": sorted(set().union(*lists.values())),
    }


def cmd_mixed(args) -> dict:
    report = mixed_check(args.variant, args.limit)
    return {
        "params": {"variant": args.variant},
        "limit": args.limit,
        "result": {"exceptions": report.exceptions, "count": len(report)},
        "fixture_match": _compare(report.exceptions, args.fixture),
        "_list": report.exceptions,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="primetri", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fixture=True):
        p.add_argument("--limit", type=_nonneg, required=True, help="scan bound N")
        p.add_argument("--list", action="store_true", help="plain output, one integer per line")
        if fixture:
            p.add_argument("--fixture", help="fixture file or name to compare against")
        p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("exceptions", help="exceptions to n = c*p + m*T_x")
    p.add_argument("--c", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--prime-class", type=_prime_class, default=(0, 1), metavar="R,D")
    p.add_argument("--allow-zero", action="store_true", help="p = 0 is admissible")
    p.add_argument("--x-domain", choices=[v.value for v in XDomain], default="all")
    p.add_argument("--odd-only", action="store_true")
    p.add_argument("--coprime-to", type=int)
    p.add_argument("--greater-than", type=int)
    common(p)
    p.set_defaults(func=cmd_exceptions)

    p = sub.add_parser("sets", help="S_m^(a), S_m^(a)(r), or f(a)")
    p.add_argument("--m", type=int)
    p.add_argument("--a", type=_nonneg, default=0)
    p.add_argument("--r", type=int)
    p.add_argument("--largest", action="store_true", help="largest n not 2^a p + T_x (p zero or prime)")
    common(p)
    p.set_defaults(func=cmd_sets)

    p = sub.add_parser("witness", help="families of non-representable integers")
    branch = p.add_mutually_exclusive_group(required=True)
    branch.add_argument("--odd", action="store_true")
    branch.add_argument("--even", action="store_true")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=_nonneg, default=0)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--kmax", type=int, default=50)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("theta", help="theta-series exception lists")
    p.add_argument("--cross-validate", action="store_true")
    common(p, fixture=False)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("mixed", help="sums of squares and triangular numbers")
    p.add_argument("--variant", choices=MIXED_VARIANTS, required=True)
    common(p)
    p.set_defaults(func=cmd_mixed)
    return parser


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(message)s")
    start = time.perf_counter()
    try:
        report = args.func(args)
    except (UsageError, WitnessConditionError, SieveLimitError, ValueError, FileNotFoundError) as exc:
        parser.print_usage(sys.stderr)
        print(f"primetri {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    listing = report.pop("_list")
    report["command"] = ["primetri", *(sys.argv[1:] if argv is None else argv)]
    report["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    if getattr(args, "list", False):
        sys.stdout.write(fixtures.dump(listing))
    else:
        print(render(report))
    return EXIT_MISMATCH if report.get("fixture_match") is False else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
