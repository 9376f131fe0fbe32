"""Command-line interface.

Exit status: 0 when every executed check passes, 1 on a mathematical check
failure, 2 on input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .ideals import (
    Ideal,
    IdealError,
    colon,
    default_bound,
    degree_of,
    hilbert_function,
    hilbert_series,
    krull_dim,
    saturate,
)
from .linkage import (
    H0SupportError,
    LinkageError,
    PreconditionError,
    ReportOptions,
    check_self_duality,
    extract_regular_sequence,
    full_report,
    jacobian_generators,
    linked_ideal,
    socle_degree,
)
from .polyring import PolynomialError
from .problem import ProblemError, load_problem

COMMANDS = ("gb", "hilbert", "saturate", "colon", "jacobian", "h0", "linkage", "verify")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jaclink",
        description="Jacobian rings, local cohomology and linkage of projective "
                    "hypersurfaces with isolated singularities.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("problems", nargs="+", help="problem file(s)")
    parser.add_argument("--char", type=int, help="coefficient characteristic (prime or 0)")
    parser.add_argument("--order", choices=("grevlex", "grlex"))
    parser.add_argument("--bound", type=int, help="top degree for degreewise tables")
    parser.add_argument("--seed", type=int, help="seed for the regular-sequence search")
    parser.add_argument("--distinguished", type=int, help="index of the generator f_0")
    parser.add_argument("--json", help="write the JSON result here (a directory when "
                                       "several problems are given)")
    parser.add_argument("--oracle", action="store_true",
                        help="cross-check every dimension with the Macaulay-matrix oracle")
    parser.add_argument("--timings", action="store_true",
                        help="include elapsed times in the JSON report")
    parser.add_argument("--jobs", type=int, default=1, help="problems to run in parallel")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def _ideal(prob) -> Ideal:
    return Ideal(prob.ring, prob.generators())


def _bound_for(prob, gens) -> int:
    if prob.bound is not None:
        return prob.bound
    degs = [g.degree for g in gens if not g.is_zero()]
    if prob.f is not None:
        degs = [prob.f.degree - 1] * prob.ring.num_vars
    n = prob.ring.num_vars - 1
    sigma = socle_degree(degs, n) if len(degs) == n + 1 and min(degs) >= 1 else max(degs)
    return default_bound(sigma, degs, prob.ring.num_vars)


def cmd_gb(prob, args):
    I = _ideal(prob)
    basis = [str(g) for g in I.gb]
    lines = [f"reduced Groebner basis ({prob.ring.describe()}), {len(basis)} element(s):"]
    lines += [f"  {g}" for g in basis]
    return EXIT_OK, "\n".join(lines), {"basis": basis}


def cmd_hilbert(prob, args):
    I = _ideal(prob)
    gens = list(I.generators)
    bound = _bound_for(prob, gens)
    hs = hilbert_series(I)
    table = [[k, hilbert_function(I, k)] for k in range(bound + 1)]
    out = {"numerator": list(hs.numerator), "num_vars": hs.num_vars, "table": table}
    lines = [f"Hilbert series: {hs}"]
    if hs.numerator:
        dim = krull_dim(I)
        out["krull_dim"] = dim
        lines.append(f"Krull dimension: {dim} (dim Proj = {dim - 1})")
        if dim == 1:
            out["degree"] = degree_of(I)
            lines.append(f"degree: {out['degree']}")
    lines.append("k  dim (S/I)_k")
    lines += [f"{k:<2d} {v}" for k, v in table]
    return EXIT_OK, "\n".join(lines), out


def cmd_saturate(prob, args):
    I = _ideal(prob)
    res = saturate(I, with_index=True)
    basis = [str(g) for g in res.ideal.gb]
    lines = [f"saturation ({res.index} colon step(s) enlarged the ideal):"]
    lines += [f"  {g}" for g in basis]
    return EXIT_OK, "\n".join(lines), {"basis": basis, "index": res.index,
                                       "already_unit": res.was_unit}


def cmd_colon(prob, args):
    I = _ideal(prob)
    by = Ideal(prob.ring, prob.by) if prob.by else Ideal.irrelevant(prob.ring)
    Q = colon(I, by)
    basis = [str(g) for g in Q.gb]
    lines = [f"({I} : {by}) =" if prob.by else f"({I} : S_+) ="]
    lines += [f"  {g}" for g in basis]
    return EXIT_OK, "\n".join(lines), {"basis": basis}


def cmd_jacobian(prob, args):
    if prob.f is None:
        raise UsageError("the jacobian command needs 'f'")
    partials = [str(g) for g in jacobian_generators(prob.f)]
    lines = [f"J(f) for f = {prob.f}:"] + [f"  {g}" for g in partials]
    return EXIT_OK, "\n".join(lines), {"generators": partials}


def _quasi(prob):
    prob.require_full_arity()
    gens = prob.generators()
    degrees = ([prob.f.degree - 1] * prob.ring.num_vars if prob.f is not None
               else [g.degree for g in gens])
    return extract_regular_sequence(gens, prob.distinguished, prob.seed, degrees=degrees)


def cmd_h0(prob, args):
    quasi = _quasi(prob)
    link = linked_ideal(quasi, prob.bound)
    res = check_self_duality(link.h0, link.sigma)
    lines = [f"sigma = {link.sigma}", "k  dim H^0_k"]
    lines += [f"{k:<2d} {link.h0(k)}" for k in range(max(link.sigma, 0) + 1)]
    beyond = [k for k in link.h0.support() if k > link.sigma]
    for k in beyond:
        lines.append(f"{k:<2d} {link.h0(k)}")
    if res.ok:
        lines.append("self-dual: yes")
    else:
        lines.append(f"self-dual: no (h({res.witness}) = {res.lhs}, "
                     f"h({link.sigma - res.witness}) = {res.rhs})")
    out = {"sigma": link.sigma, "tau": link.tau, "h0": link.h0.as_pairs(),
           "self_dual": res.ok, "witness": res.witness}
    return (EXIT_OK if res.ok else EXIT_FAIL), "\n".join(lines), out


def cmd_linkage(prob, args):
    quasi = _quasi(prob)
    link = linked_ideal(quasi, prob.bound)
    fmt = lambda I: [str(g) for g in I.gb]
    out = {"f0": str(quasi.f0), "J": [str(g) for g in quasi.ci_gens],
           "I_sat": fmt(link.i_sat), "K_prime": fmt(link.k_prime),
           "degrees": list(quasi.degrees), "tau": link.tau, "sigma": link.sigma,
           "attempts": quasi.attempts, "involution": True}
    lines = [f"f0 = {quasi.f0}",
             "J  = (" + ", ".join(out["J"]) + ")",
             "I^s = (" + ", ".join(out["I_sat"]) + ")",
             "K' = (J : I^s) = (" + ", ".join(out["K_prime"]) + ")",
             f"degrees {out['degrees']}, tau = {link.tau}, sigma = {link.sigma}",
             "involution (J : K') = I^s: yes"]
    return EXIT_OK, "\n".join(lines), out


def cmd_verify(prob, args):
    prob.require_full_arity()
    subject = prob.f if prob.f is not None else prob.gens
    opts = ReportOptions(prob.distinguished, prob.seed, prob.bound, args.oracle)
    report = full_report(subject, opts)
    if report.has_errors:
        code = EXIT_INPUT
    elif report.has_failures:
        code = EXIT_FAIL
    else:
        code = EXIT_OK
    return code, report.summary(), report


HANDLERS = {"gb": cmd_gb, "hilbert": cmd_hilbert, "saturate": cmd_saturate,
            "colon": cmd_colon, "jacobian": cmd_jacobian, "h0": cmd_h0,
            "linkage": cmd_linkage, "verify": cmd_verify}


def run_one(command: str, path: str, args) -> tuple:
    """Run one command on one problem file; returns (exit code, text, json text)."""
    overrides = {"char": args.char, "order": args.order, "bound": args.bound,
                 "seed": args.seed, "distinguished": args.distinguished}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            prob = load_problem(path, overrides)
            code, text, payload = HANDLERS[command](prob, args)
        except (ProblemError, PolynomialError, PreconditionError, UsageError,
                IdealError, H0SupportError, ValueError) as exc:
            return EXIT_INPUT, f"error: {exc}", None
        except LinkageError as exc:
            return EXIT_FAIL, f"linkage check failed: {exc}", None
    notes = "".join(f"warning: {w.message}\n" for w in caught)
    if hasattr(payload, "to_json"):
        js = payload.to_json(timings=args.timings)
    else:
        js = json.dumps({"command": command, "input": path, "result": payload},
                        indent=2, sort_keys=True) + "\n"
    return code, notes + text, js


def _json_target(args, path: str, many: bool) -> Path | None:
    if not args.json:
        return None
    if not many:
        return Path(args.json)
    d = Path(args.json)
    d.mkdir(parents=True, exist_ok=True)
    return d / (Path(path).stem + ".json")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    many = len(args.problems) > 1
    if args.jobs > 1 and many:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run_one, [args.command] * len(args.problems),
                                    args.problems, [args] * len(args.problems)))
    else:
        results = [run_one(args.command, p, args) for p in args.problems]
    worst = EXIT_OK
    for path, (code, text, js) in zip(args.problems, results):
        if many:
            print(f"== {path}")
        stream = sys.stderr if code == EXIT_INPUT else sys.stdout
        print(text, file=stream)
        target = _json_target(args, path, many)
        if target is not None and js is not None:
            target.write_text(js, encoding="utf-8")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
