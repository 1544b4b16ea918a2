"""Command-line front end.

Exit codes: 0 success, 1 failed identity, 2 bad input, 3 I/O error.
"""
import argparse
import json
import logging
import sys
from pathlib import Path

import jsonschema

from . import class_numbers as cn
from .core import quadratic_image
from .cyclic import make_context, subgroup_of_order
from .errors import StickelbergerError
from .group_ring import render
from .leopoldt import (exponent_bound, is_leopoldt, make_module,
                       projection_necessary_check)
from .session import (SLOW_TIER, PrimeSession, ResultCache, default_cache_dir,
                      scan, write_csv, write_json)
from .verify import identity_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3

MODULE_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "invariant_factors", "generator_action"],
    "properties": {
        "schema_version": {"const": 1},
        "l": {"type": "integer", "minimum": 2},
        "subgroup_order": {"type": "integer", "minimum": 1},
        "invariant_factors": {"type": "array", "items": {"type": "integer", "minimum": 2}},
        "generator_action": {"type": "array",
                             "items": {"type": "array", "items": {"type": "integer"}}},
    },
    "additionalProperties": False,
}


class InputError(Exception):
    pass


def _prime(args, l):
    try:
        ctx = make_context(l)
    except StickelbergerError:
        raise InputError(f"{l} is not prime") from None
    if l > SLOW_TIER and not args.deep:
        raise InputError(f"l = {l} is above {SLOW_TIER}; pass --deep for slow-tier work")
    return ctx


def _session(args, l):
    _prime(args, l)
    cache = ResultCache(None if args.no_cache else (args.cache or default_cache_dir()))
    return PrimeSession(l, cache)


def _emit(args, payload, lines):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        print("\n".join(lines))


def cmd_report(args):
    s = _session(args, args.l)
    ctx = s.ctx
    J = s.ideal()
    pivots = 1
    for row, c in zip(J.basis, J.pivot_columns):
        pivots *= row[c]
    payload = {"l": ctx.l, "primitive_root": ctx.g,
               "l_theta": render(s.stick.l_theta),
               "ideal_rank": J.rank, "ideal_hnf_determinant": pivots}
    lines = [f"l = {ctx.l}  (primitive root {ctx.g})",
             f"l*theta = {payload['l_theta']}",
             f"J: rank {J.rank} in Z^{ctx.order}, HNF pivot product {pivots}"]
    if ctx.l == 2:
        lines.append("degenerate case: theta = 1/2, so 1 is in J and J = Z")
        payload["degenerate"] = True
    else:
        h_lat = s.minus_index()
        h_mai = cn.h_minus_maillet(ctx.l)
        payload.update(h_minus_lattice=h_lat, h_minus_maillet=h_mai)
        lines.append(f"h_l^- = {h_lat} (lattice index), {h_mai} (Maillet)")
        if ctx.l % 4 == 3 and ctx.l > 3:
            rep = quadratic_image(ctx)
            payload.update(h_quadratic=rep.h_quadratic, quadratic_integer=rep.lemma_integer,
                           least_integer_in_r_ideal=rep.smallest_integer)
            lines.append(f"h(-{ctx.l}) = {rep.h_quadratic}")
            lines.append(f"((l-1)/2) h(-l) = {rep.lemma_integer} lies in r(J); "
                         f"least positive integer of r(J) is {rep.smallest_integer}")
    s.flush()
    _emit(args, payload, lines)
    if ctx.l > 2 and payload["h_minus_lattice"] != payload["h_minus_maillet"]:
        return EXIT_FAIL
    return EXIT_OK


def _subgroup(ctx, d):
    try:
        return subgroup_of_order(ctx, d)
    except StickelbergerError:
        raise InputError(f"{d} does not divide {ctx.order}") from None


def cmd_proj(args):
    s = _session(args, args.l)
    _subgroup(s.ctx, args.order)
    rep = s.projection(args.order)
    s.flush()
    lines = [f"l = {rep.l}, |H| = {rep.d} ({rep.parity})"]
    if rep.parity == "odd":
        lines.append(f"[Z[H] : pi_H(J)] = {rep.index}")
        lines.append(f"least positive integer in pi_H(J): {rep.smallest_integer}")
    else:
        lines.append(f"pi_H(J) inside (1 + rho + ... + rho^(|H|/2-1)) Z[H]: {rep.in_half_norm_ideal}")
        lines.append(f"n_H = {rep.n_H}")
        lines.append("least positive integer in pi_H(J): "
                     + (str(rep.smallest_integer) if rep.smallest_integer else "none"))
    _emit(args, rep.to_json(), lines)
    return EXIT_OK


def cmd_scan(args):
    if args.lmin > args.lmax:
        raise InputError("--lmin must not exceed --lmax")
    if args.lmax > SLOW_TIER and not args.deep:
        raise InputError(f"--lmax above {SLOW_TIER} needs --deep")
    cache_dir = None if args.no_cache else (args.cache or default_cache_dir())
    rows = scan(args.lmin, args.lmax, args.odd_only, args.proper_only, cache_dir, args.jobs)
    try:
        with open(args.out, "w", newline="") as fh:
            (write_csv if args.format == "csv" else write_json)(rows, fh)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    flagged = [r for r in rows if r.value != 1]
    for r in flagged:
        print(f"nontrivial: l={r.l} |H|={r.subgroup_order} ({r.parity}) value={r.value}")
    print(f"{len(rows)} rows, {len(flagged)} nontrivial")
    if not all(r.divides_h_minus for r in rows):
        print("anomaly: an index does not divide h_l^-", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def load_module_file(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IOError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except ValueError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from None
    errors = sorted(jsonschema.Draft202012Validator(MODULE_SCHEMA).iter_errors(data),
                    key=lambda e: list(e.path))
    if errors:
        msgs = [f"{'/'.join(map(str, e.path)) or '<root>'}: {e.message}" for e in errors]
        raise InputError(f"{path}: " + "; ".join(msgs))
    return data


def cmd_check(args):
    ctx = _prime(args, args.l)
    H = _subgroup(ctx, args.order)
    data = load_module_file(args.module)
    for field, want in (("l", args.l), ("subgroup_order", args.order)):
        if field in data and data[field] != want:
            raise InputError(f"{args.module}: {field}: file says {data[field]}, flags say {want}")
    try:
        M = make_module(data["invariant_factors"], data["generator_action"], H)
    except StickelbergerError as exc:
        raise InputError(f"{args.module}: {exc}") from None
    verdict = is_leopoldt(ctx, H, M)
    necessary = projection_necessary_check(ctx, H, M)
    bound = exponent_bound(ctx, H)
    if verdict and not necessary:
        print("internal error: Leopoldt verdict without the projection condition", file=sys.stderr)
        return EXIT_FAIL
    lines = [f"leopoldt: {str(verdict).lower()}",
             f"pi_H(J) annihilates the module: {str(necessary).lower()}"]
    if bound.parity == "odd":
        lines.append(f"exponent bound: {bound.integer}")
    else:
        lines.append(f"exponent bound: n_H = {bound.n_H} on the (1 - J)-part; "
                     + (f"integer annihilator {bound.integer}" if bound.integer
                        else "no integer annihilator"))
    payload = {"leopoldt": verdict, "projection_annihilates": necessary,
               "exponent_bound": bound.to_json()}
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args):
    s = _session(args, args.l)
    checks = identity_suite(s)
    s.flush()
    if args.json:
        print(json.dumps([c.__dict__ for c in checks], indent=1))
    else:
        for c in checks:
            print(c.line())
    failed = sum(not c.ok for c in checks)
    if not args.json:
        print(f"{len(checks) - failed}/{len(checks)} identities hold for l = {s.l}")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", type=Path, help="cache directory")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    common.add_argument("--deep", action="store_true", help=f"allow primes above {SLOW_TIER}")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="stickel", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("report", parents=[common], help="per-prime summary")
    r.add_argument("--l", type=int, required=True)
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_report)

    q = sub.add_parser("proj", parents=[common], help="projection to a subgroup")
    q.add_argument("--l", type=int, required=True)
    q.add_argument("--order", type=int, required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_proj)

    s = sub.add_parser("scan", parents=[common], help="projection indices over a range of primes")
    s.add_argument("--lmin", type=int, required=True)
    s.add_argument("--lmax", type=int, required=True)
    s.add_argument("--odd-only", action="store_true")
    s.add_argument("--proper-only", action="store_true",
                   help="only subgroups with |H| < (l-1)/2")
    s.add_argument("--out", required=True)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_scan)

    c = sub.add_parser("check", parents=[common], help="Leopoldt criterion for a module file")
    c.add_argument("--l", type=int, required=True)
    c.add_argument("--order", type=int, required=True)
    c.add_argument("--module", required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    v = sub.add_parser("verify", parents=[common], help="run the identity suite")
    v.add_argument("--l", type=int, required=True)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
