"""Command-line front end: expansions, characters, cusp tables, certification.

Exit codes: 0 success, 1 computational failure (including a certification
verdict of fail), 2 invalid input.  Identical invocations print identical
bytes; all randomness is seeded per prime.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .certify import CertifyConfig, certify, report_to_dict, report_to_json, verify_z_relation
from .eta import (
    classical_eta,
    eta_quotient_series,
    expand_product,
    find_triplet,
    generalized_eta,
    orbit_product,
    reduce_index,
    triplet_product,
)
from .exact import is_prime, prime_context
from .qseries import PrecisionError
from .subgroups import (
    SL2Matrix,
    Subgroup,
    cusp_set,
    epsilon_factor,
    quadratic_character,
    sign_character,
)


def _require_prime(p: int | None) -> int:
    if p is None:
        raise ValueError("--p is required for this command")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


def _require_prec(prec: int) -> int:
    if prec < 1:
        raise ValueError("--prec must be a positive number of q-steps")
    return prec


def cmd_expand(args) -> int:
    prec = _require_prec(args.prec)
    if args.function == "eta":
        print(classical_eta(args.index, prec).render())
        return 0
    p = _require_prime(args.p)
    if args.function == "E":
        if args.index % p == 0:
            raise ValueError(f"index {args.index} is divisible by the level {p}")
        idx = reduce_index(args.index, p)
        print(generalized_eta(idx.g, p, prec).scale(idx.sign).render())
        return 0
    ctx = prime_context(p)
    if args.function == "F":
        if args.index % p == 0:
            raise ValueError(f"index {args.index} is divisible by {p}")
        series = expand_product(orbit_product(args.index, ctx), prec)
    elif args.function == "G":
        series = expand_product(triplet_product(find_triplet(p), p), prec)
    else:  # z
        series = eta_quotient_series(ctx, prec)
    print(series.render())
    return 0


def cmd_character(args) -> int:
    m = SL2Matrix.parse(args.matrix)
    if args.which == "psi":
        print(sign_character(m))
    elif args.which == "epsilon":
        print(epsilon_factor(m.a, m.b, m.c, m.d))
    else:  # chi
        ctx = prime_context(_require_prime(args.p))
        print(quadratic_character(m, ctx))
    return 0


def cmd_cusps(args) -> int:
    ctx = prime_context(_require_prime(args.p))
    group = Subgroup(args.group)
    table = sorted(cusp_set(group, ctx), key=lambda cw: (cw[0].c, cw[0].a))
    for cusp, width in table:
        print(f"{str(cusp):>8}  width {width}")
    total = sum(w for _, w in table)
    print(f"{len(table)} cusps of {group.value}({ctx.p}), width sum {total}")
    return 0


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep or not lo.isdigit() or not hi.isdigit():
        raise ValueError(f"expected a range like 5..50, got {text!r}")
    a, b = int(lo), int(hi)
    if a > b:
        raise ValueError(f"empty range {text!r}")
    return a, b


def cmd_certify(args) -> int:
    if (args.p is None) == (args.range is None):
        raise ValueError("exactly one of --p / --range is required")
    if args.p is not None:
        primes = [_require_prime(args.p)]
    else:
        a, b = _parse_range(args.range)
        primes = [q for q in range(max(a, 2), b + 1) if is_prime(q)]
        if not primes:
            raise ValueError(f"no primes in range {args.range}")
    cfg = CertifyConfig(bound=args.prec)
    reports = [certify(q, cfg) for q in primes]
    if args.out is not None:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for r in reports:
            (outdir / f"{r.p}.json").write_text(report_to_json(r) + "\n")
    if args.json:
        if args.p is not None:
            print(report_to_json(reports[0]))
        else:
            print(json.dumps([report_to_dict(r) for r in reports], indent=2))
    else:
        for r in reports:
            verdict = "pass" if r.overall else "FAIL"
            print(f"p={r.p} branch={r.branch} degree={r.degree} overall={verdict}")
        good = sum(r.overall for r in reports)
        print(f"certified {good}/{len(reports)} primes")
    return 0 if all(r.overall for r in reports) else 1


def cmd_z_relation(args) -> int:
    ctx = prime_context(_require_prime(args.p))
    res = verify_z_relation(ctx, bound=_require_prec(args.prec))
    if res.status == "skipped":
        print(f"z-relation skipped for p={ctx.p}: {res.reason}")
        return 0
    if res.status == "pass":
        sign = res.witness["sign"]
        print(
            f"z == {'+' if sign == 1 else '-'}prod F_(g^j), j < {ctx.k} "
            f"(exact to {args.prec} steps past leading)"
        )
        return 0
    print(f"z-relation FAILED for p={ctx.p}: {res.reason}")
    return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etacover",
        description="Exact eta-product expansions and covering certification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_expand = sub.add_parser("expand", help="print an exact q-expansion")
    p_expand.add_argument("--p", type=int, help="prime level")
    p_expand.add_argument(
        "--function", required=True, choices=["E", "F", "G", "z", "eta"]
    )
    p_expand.add_argument(
        "--index", type=int, default=1,
        help="index g or h (scale for eta; ignored for G and z)",
    )
    p_expand.add_argument("--prec", type=int, default=10, help="q-steps past leading")
    p_expand.set_defaults(func=cmd_expand)

    p_char = sub.add_parser("character", help="evaluate a character or multiplier")
    p_char.add_argument("--p", type=int, help="prime (required for chi)")
    p_char.add_argument("--matrix", required=True, help="entries a,b,c,d")
    p_char.add_argument("--which", required=True, choices=["psi", "chi", "epsilon"])
    p_char.set_defaults(func=cmd_character)

    p_cusps = sub.add_parser("cusps", help="list cusps and widths of a subgroup")
    p_cusps.add_argument("--p", type=int, required=True)
    p_cusps.add_argument(
        "--group", default="Gamma2",
        choices=[g.value for g in Subgroup],
    )
    p_cusps.set_defaults(func=cmd_cusps)

    p_cert = sub.add_parser("certify", help="run the per-prime certifier")
    p_cert.add_argument("--p", type=int, help="a single prime")
    p_cert.add_argument("--range", help="inclusive prime range A..B")
    p_cert.add_argument("--out", help="directory for one JSON report per prime")
    p_cert.add_argument("--json", action="store_true", help="print reports as JSON")
    p_cert.add_argument("--prec", type=int, default=10, help="exact comparison bound")
    p_cert.set_defaults(func=cmd_certify)

    p_z = sub.add_parser("z-relation", help="check z against the product of F units")
    p_z.add_argument("--p", type=int, required=True)
    p_z.add_argument("--prec", type=int, default=10)
    p_z.set_defaults(func=cmd_z_relation)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PrecisionError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
