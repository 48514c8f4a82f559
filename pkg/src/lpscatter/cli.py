"""Command-line front end: field flags, one subcommand per capability, and the
verification suites.  Identical invocations produce byte-identical output."""

import argparse
import json
import sys
from dataclasses import dataclass

from . import kernels
from .census import CensusError, census_cell
from .equiv import (automorphisms, brute_force_stabilizer, brute_force_witness,
                    lp_equivalent, normalize_s)
from .gftower import CeilingExceeded, build_field
from .linpoly import LPParams, lp_poly
from .linset import points_of
from .verify import run_suite

DEFAULT_BRUTE_CEILING = 1 << 12
DEFAULT_ORBIT_CEILING = 1 << 20


@dataclass(frozen=True)
class RunConfig:
    """Validated common run options; identical configs give byte-identical output."""

    fmt: str = "tsv"
    workers: int = 0
    seed: int = 0
    brute_ceiling: int = DEFAULT_BRUTE_CEILING
    orbit_ceiling: int = DEFAULT_ORBIT_CEILING

    def __post_init__(self):
        if self.fmt not in ("tsv", "json"):
            raise ValueError("format must be tsv or json")
        if self.brute_ceiling <= 0 or self.orbit_ceiling <= 0:
            raise ValueError("ceilings must be positive")
        if self.workers < 0:
            raise ValueError("workers must be nonnegative")


def _config(args) -> RunConfig:
    return RunConfig(fmt=getattr(args, "format", "tsv"),
                     workers=getattr(args, "workers", 0),
                     seed=getattr(args, "seed", 0),
                     brute_ceiling=getattr(args, "ceiling", DEFAULT_BRUTE_CEILING),
                     orbit_ceiling=getattr(args, "orbit_ceiling", DEFAULT_ORBIT_CEILING))


def _parse_int_list(text: str) -> list[int]:
    """Comma-separated entries, each a value or an inclusive a-b range."""
    out = []
    for item in text.split(","):
        item = item.strip()
        if "-" in item[1:]:
            a, b = item.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(item))
    return out


def _tower(args):
    modulus = None
    if getattr(args, "modulus", None):
        modulus = tuple(int(c) for c in args.modulus.split(","))
    return build_field(args.p, args.r, args.n, modulus=modulus)


def _emit(payload, fmt: str, tsv_rows):
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        for row in tsv_rows:
            print("\t".join("-" if v is None else str(v) for v in row))


def _lp_params(tw, args, which=("s", "theta")):
    s = getattr(args, which[0])
    theta = tw.parse_element(getattr(args, which[1]))
    return LPParams(tw, s, theta)


def cmd_linset(args) -> int:
    tw = _tower(args)
    par = _lp_params(tw, args)
    if not par.valid and not args.allow_invalid:
        print("error: N(theta) is 0 or 1; pass --allow-invalid to proceed", file=sys.stderr)
        return 2
    L = points_of(lp_poly(par))
    bound = (tw.q**L.rank - 1) // (tw.q - 1)
    payload = L.to_json()
    payload["valid"] = par.valid
    payload["bound"] = bound
    payload["bound_status"] = "attained" if L.size == bound else "strict"
    dist = {}
    for w in L.weights:
        dist[w] = dist.get(w, 0) + 1
    payload["weight_distribution"] = {str(w): dist[w] for w in sorted(dist)}
    rows = [("rank", L.rank), ("size", L.size), ("scattered", L.is_scattered()),
            ("valid", par.valid), ("bound", bound),
            ("bound_status", payload["bound_status"])]
    rows += [(f"weight_{w}", c) for w, c in sorted(dist.items())]
    _emit(payload, args.format, rows)
    return 0


def cmd_equiv(args) -> int:
    tw = _tower(args)
    pf = normalize_s(_lp_params(tw, args, ("s", "theta")))
    pg = normalize_s(_lp_params(tw, args, ("t", "delta")))
    verdict = lp_equivalent(pf, pg)
    payload = verdict.to_json()
    payload["s"] = pf.s
    payload["t"] = pg.s
    payload["theta"] = pf.theta
    payload["delta"] = pg.theta
    rows = [("equivalent", verdict.equivalent), ("case", verdict.case),
            ("tau_exponent", verdict.tau_exponent)]
    if verdict.witness is not None:
        rows.append(("witness_matrix", ",".join(str(v) for v in verdict.witness.matrix())))
        rows.append(("witness_frobenius", verdict.witness.k))
    if args.brute_force:
        witness = brute_force_witness(lp_poly(pf), lp_poly(pg), ceiling=args.ceiling)
        payload["brute_equivalent"] = witness is not None
        payload["agreement"] = (witness is not None) == verdict.equivalent
        rows.append(("brute_equivalent", witness is not None))
        rows.append(("agreement", payload["agreement"]))
    for note in verdict.notes:
        rows.append(("note", note))
    _emit(payload, args.format, rows)
    return 0


def cmd_aut(args) -> int:
    tw = _tower(args)
    par = normalize_s(_lp_params(tw, args))
    try:
        aut = automorphisms(par)
    except RuntimeError as exc:
        print(f"error: automorphism construction failed: {exc}", file=sys.stderr)
        return 1
    elements = sorted(aut.elements, key=lambda m: (m.k, m.a, m.b, m.c, m.d))
    payload = {
        "size": aut.size,
        "n_tau": aut.n_tau,
        "predicted_size": aut.predicted_size,
        "diagonal": len(aut.d_part),
        "antidiagonal": len(aut.c_part),
        "elements": [m.to_json() for m in elements],
    }
    rows = [("size", aut.size), ("n_tau", aut.n_tau),
            ("predicted_size", aut.predicted_size),
            ("diagonal", len(aut.d_part)), ("antidiagonal", len(aut.c_part))]
    if args.brute_force:
        stab = brute_force_stabilizer(lp_poly(par), ceiling=args.ceiling)
        payload["brute_size"] = len(stab)
        payload["agreement"] = stab == aut.elements
        rows.append(("brute_size", len(stab)))
        rows.append(("agreement", payload["agreement"]))
    rows += [(f"element_{i}", f"{','.join(str(v) for v in m.matrix())};k={m.k}")
             for i, m in enumerate(elements)]
    _emit(payload, args.format, rows)
    return 0


def cmd_census(args) -> int:
    cells = [(p, r, n)
             for p in _parse_int_list(args.p)
             for r in _parse_int_list(args.r)
             for n in _parse_int_list(args.n)]
    reports = []
    for p, r, n in cells:
        try:
            reports.append(census_cell(p, r, n, with_brute=not args.no_brute,
                                       orbit_ceiling=args.orbit_ceiling,
                                       brute_ceiling=args.ceiling))
        except CensusError as exc:
            print(f"error: ({p}, {r}, {n}): {exc}", file=sys.stderr)
            return 2
    header = ("p", "r", "n", "lambda", "epsilon", "lower", "upper", "oracle", "verified")
    rows = [header]
    for rep in reports:
        rows.append((rep.p, rep.r, rep.n, rep.lam, rep.epsilon,
                     rep.lower, rep.upper, rep.oracle_lambda, rep.verified))
    _emit([rep.to_json() for rep in reports], args.format, rows)
    return 0


def cmd_verify(args) -> int:
    try:
        results = run_suite(args.suite, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    total_checks = total_failures = 0
    for res in results:
        for line in res.lines:
            print(f"  {line}")
        print(f"suite {res.name}: {res.checks} checks, {res.failures} failures")
        total_checks += res.checks
        total_failures += res.failures
    if len(results) > 1:
        print(f"total: {total_checks} checks, {total_failures} failures")
    return 0 if total_failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpscatter",
        description="Scattered linear sets of LP type on PG(1, q^n): linear sets, "
                    "equivalence, automorphism groups, census, verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def field_args(sp, with_n=True):
        sp.add_argument("--p", type=int, required=True, help="field characteristic")
        sp.add_argument("--r", type=int, required=True, help="q = p^r")
        if with_n:
            sp.add_argument("--n", type=int, required=True, help="extension degree over F_q")
        sp.add_argument("--modulus", help="override modulus, comma-separated coefficients, low degree first")

    def common_args(sp):
        sp.add_argument("--format", choices=("tsv", "json"), default="tsv")
        sp.add_argument("--workers", type=int, default=0, help="numba thread count (0 = default)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--ceiling", type=int, default=DEFAULT_BRUTE_CEILING,
                        help="brute-force field-size ceiling")

    sp = sub.add_parser("linset", help="point set, weights and scatteredness of one map")
    field_args(sp)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--theta", required=True, help="element: decimal encoding or g^k")
    sp.add_argument("--allow-invalid", action="store_true")
    common_args(sp)
    sp.set_defaults(fn=cmd_linset)

    sp = sub.add_parser("equiv", help="closed-form equivalence verdict with witness")
    field_args(sp)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--theta", required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--delta", required=True)
    sp.add_argument("--brute-force", action="store_true",
                    help="cross-check with the exhaustive group scan")
    common_args(sp)
    sp.set_defaults(fn=cmd_equiv)

    sp = sub.add_parser("aut", help="automorphism group of one linear set")
    field_args(sp)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--theta", required=True)
    sp.add_argument("--brute-force", action="store_true")
    common_args(sp)
    sp.set_defaults(fn=cmd_aut)

    sp = sub.add_parser("census", help="count of inequivalent sets over a parameter grid")
    sp.add_argument("--p", required=True, help="primes: list/ranges, e.g. 2,3,5 or 2-7")
    sp.add_argument("--r", required=True, help="r values: list/ranges")
    sp.add_argument("--n", required=True, help="n values: list/ranges")
    sp.add_argument("--orbit-ceiling", type=int, default=DEFAULT_ORBIT_CEILING)
    sp.add_argument("--no-brute", action="store_true", help="skip the point-set orbit oracle")
    common_args(sp)
    sp.set_defaults(fn=cmd_census)

    sp = sub.add_parser("verify", help="run a named verification suite")
    sp.add_argument("--suite", required=True,
                    help="adjoint, coeffs, normpower, equiv, aut, census, bounds, scattered, or all")
    common_args(sp)
    sp.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if cfg.workers and kernels.active_backend() == "numba":
            import numba
            numba.set_num_threads(cfg.workers)
        return args.fn(args)
    except (ValueError, CeilingExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
