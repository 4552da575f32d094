"""Command line front end.

Exit codes: 0 success or verified identity, 1 identity mismatch, 2 usage or
input error, 3 resource cap exceeded.  Results go to stdout, diagnostics to
stderr.
"""
from __future__ import annotations

import argparse
import csv
import json
import secrets
import sys
from fractions import Fraction

from . import fekete as fk
from .amalgam import (
    AmalgamPair,
    det_via_theorem3,
    generic_pair,
    kappa,
    perm_sum_theorem4,
    random_pair,
    star,
    symbolic_pair,
    trivial_pair_tableaux,
)
from .errors import ConsistencyError, DegenerateInputError, ResourceCapError
from .exact_core import det_exact
from .fayers import fayers_matrix, hook_product, pairing, phi_matrix
from .formats import expansion_to_json, load_matrix, load_points, read_json, scalar_to_json
from .tableaux import enumerate_syt, format_tableau, parse_tableau
from .vandermonde import (
    VdmSpec,
    build_vdm,
    build_vdm_hom,
    conic_expansion_collinear,
    conic_expansion_separated,
    format_factor_terms,
    format_factored,
    hom_kernel,
    hom_monomials,
    symbolic_points,
    vdm_theorem1,
    vdm_theorem2,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
SYMBOLIC_LIMIT = 6


class UsageError(Exception):
    pass


def _out(text=""):
    print(text)


def _err(text):
    print(text, file=sys.stderr)


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fraction_list(text):
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from None


def _seed(args):
    """The seed for randomized work; unseeded runs are refused under ``--ci``."""
    if args.seed is not None:
        return args.seed
    if args.ci:
        raise UsageError("--ci requires an explicit --seed for randomized runs")
    seed = secrets.randbits(32)
    _err(f"using seed {seed}")
    return seed


def _format_matrix(rows):
    width = max((len(str(x)) for r in rows for x in r), default=1)
    return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in rows)


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------


def cmd_syt(args):
    for i, t in enumerate(enumerate_syt(args.m, args.n), start=1):
        _out(f"{i}\t{format_tableau(t)}")
    return EXIT_OK


def _print_tableau_matrix(tm, as_json):
    if as_json:
        _out(json.dumps({"matrix": [list(r) for r in tm.entries],
                         "basis": [format_tableau(t) for t in tm.basis],
                         "conjugates": [format_tableau(t) for t in tm.conjugates]}))
    else:
        _out(_format_matrix(tm.entries))


def cmd_fayers(args):
    _print_tableau_matrix(fayers_matrix(args.m, args.n), args.json)
    return EXIT_OK


def cmd_phi(args):
    _print_tableau_matrix(phi_matrix(args.m, args.n), args.json)
    return EXIT_OK


def _corrupted_phi(m, n, spec):
    entries = [list(r) for r in phi_matrix(m, n).entries]
    i, j = spec
    if not (1 <= i <= len(entries) and 1 <= j <= len(entries)):
        raise UsageError(f"--corrupt-phi {i},{j} is outside the {len(entries)}x{len(entries)} matrix")
    entries[i - 1][j - 1] += 1
    return entries


def _symbolic_guard(args):
    if args.m * args.n > args.symbolic_limit:
        raise ResourceCapError(
            f"symbolic verification of ({args.m},{args.n}) exceeds the size guard mn <= {args.symbolic_limit}")


def cmd_verify_t3(args):
    m, n = args.m, args.n
    phi = _corrupted_phi(m, n, args.corrupt_phi) if args.corrupt_phi else None
    if args.symbolic:
        _symbolic_guard(args)
        pairs = [symbolic_pair(m, n)]
    elif args.A or args.B:
        if not (args.A and args.B):
            raise UsageError("--A and --B must be given together")
        pairs = [AmalgamPair(m, n, load_matrix(args.A), load_matrix(args.B))]
    else:
        seed = _seed(args)
        pairs = [generic_pair(m, n, [seed, t]) for t in range(args.trials)]
    for t, p in enumerate(pairs):
        lhs = det_exact(star(p))
        rhs = det_via_theorem3(p, phi=phi).total
        if lhs != rhs:
            _out(f"MISMATCH trial {t}")
            _out(f"det(A*B) = {lhs}")
            _out(f"expansion = {rhs}")
            return EXIT_MISMATCH
    _out(f"OK ({m},{n}): {len(pairs)} case(s) verified")
    return EXIT_OK


def cmd_verify_t4(args):
    m, n = args.m, args.n
    if args.alpha or args.beta:
        if not (args.alpha and args.beta):
            raise UsageError("--alpha and --beta must be given together")
        alpha, beta = parse_tableau(args.alpha), parse_tableau(args.beta)
    else:
        alpha, beta = trivial_pair_tableaux(m, n)
    if (alpha, beta) == trivial_pair_tableaux(m, n):
        seed = _seed(args)
        p = random_pair(m, n, seed)
        lhs = perm_sum_theorem4(p, alpha, beta, workers=args.threads)
        det = det_exact(star(p))
        h = hook_product(m, n)
        _out(f"sum = {lhs}")
        _out(f"H*det = {h} * {det} = {h * det}")
        return EXIT_OK if lhs == h * det else EXIT_MISMATCH
    k = kappa(m, n, alpha, beta, _seed(args))
    pr = pairing(alpha, beta)
    _out(f"kappa = {k}")
    _out(f"pairing = {pr}")
    return EXIT_OK if (k == 0) == (pr == 0) else EXIT_MISMATCH


def cmd_kappa(args):
    k = kappa(args.m, args.n, parse_tableau(args.alpha), parse_tableau(args.beta), _seed(args))
    _out(str(k))
    return EXIT_OK


def _vdm_points(args, count, names):
    if args.points:
        return load_points(args.points)
    if args.symbolic:
        return symbolic_points(count, names)
    raise UsageError("give --points FILE or --symbolic")


def cmd_vdm(args):
    spec = VdmSpec(tuple(args.degrees), args.split, args.order)
    names = tuple(args.names.split(","))
    if len(names) < spec.r:
        raise UsageError(f"--names needs {spec.r} names")
    if args.symbolic and spec.size > args.symbolic_limit:
        raise ResourceCapError(f"symbolic Vandermonde of size {spec.size} exceeds the guard {args.symbolic_limit}")
    pts = _vdm_points(args, spec.size, names[:spec.r])
    det = det_exact(build_vdm(spec, pts))
    if args.expand is None:
        _out(str(det))
        return EXIT_OK
    if args.split is None:
        raise UsageError("--expand needs --split")
    if args.expand == "t1":
        exp = vdm_theorem1(spec, pts)
        if args.json:
            _out(json.dumps(expansion_to_json(exp), indent=1))
        elif args.symbolic:
            _out(format_factored(exp, spec, names))
        else:
            for t in exp.terms:
                _out(f"{t.coef:+d}\t{format_tableau(t.alpha)}\t{format_tableau(t.beta)}\t{t.value}")
        total = exp.total
    else:
        total = vdm_theorem2(spec, pts, workers=args.threads)
        _out(str(total))
    if total != det:
        _out(f"MISMATCH: expansion {total} != det {det}")
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_vdm_hom(args):
    if args.expand and (args.N, args.r) != (2, 2):
        raise UsageError("--expand is available for N=2, r=2 only")
    if args.points:
        pts = load_points(args.points)
    elif args.symbolic:
        pts = symbolic_points(len(hom_monomials(args.N, args.r)), ("x", "y", "z", "w")[:args.r])
    else:
        raise UsageError("give --points FILE or --symbolic")
    M = build_vdm_hom(args.N, args.r, pts)
    det = det_exact(M)
    _out(f"det = {det}")
    if args.kernel:
        for vec in hom_kernel(M):
            _out("kernel " + json.dumps([scalar_to_json(x) for x in vec]))
    if args.expand:
        fn = conic_expansion_separated if args.expand == "separated" else conic_expansion_collinear
        exp = fn(pts)
        _out(format_factor_terms(exp))
        if exp.total != det:
            _out(f"MISMATCH: expansion {exp.total} != det {det}")
            return EXIT_MISMATCH
    return EXIT_OK


def _weights_arg(args):
    w = args.weights
    if not w:
        raise UsageError("--weights (alias --degrees) is required")
    return w


def cmd_fekete(args):
    K = fk.descriptor_from_json(read_json(args.set))
    est = fk.transfinite_estimate(K, _weights_arg(args), args.N_list, args.budget, _seed(args),
                                  workers=args.threads)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["N", "D", "log_abs_det", "estimate"])
    for N, D, logdet, value in est.rows():
        writer.writerow([N, D, f"{logdet:.12g}", f"{value:.12g}"])
    return EXIT_OK


def cmd_multiplicativity(args):
    K1 = fk.descriptor_from_json(read_json(args.set1))
    K2 = fk.descriptor_from_json(read_json(args.set2))
    rep = fk.multiplicativity_check(K1, K2, _weights_arg(args), args.N, args.budget, _seed(args),
                                    workers=args.threads)
    _out(f"N = {rep.N}")
    _out(f"lhs t_w(K1 x K2) = {rep.lhs:.12g}")
    _out(f"t1 = {rep.t1:.12g}  exponent {rep.exponent1}")
    _out(f"t2 = {rep.t2:.12g}  exponent {rep.exponent2}")
    _out(f"rhs = {rep.rhs:.12g}")
    _out(f"relative gap = {rep.relative_gap:.3g}")
    _out(f"exponent sum = {rep.exponent1 + rep.exponent2}")
    _out(f"product configuration log|det| = {rep.product_log_abs_det:.12g}")
    _out(f"n log|det V'| + m log|det V''| = {rep.factored_log_abs_det:.12g}")
    _out(f"exact Kronecker identity = {rep.exact_identity}")
    return EXIT_MISMATCH if rep.exact_identity is False else EXIT_OK


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker processes for parallel sums")
    common.add_argument("--ci", action="store_true", help="refuse unseeded randomized runs")
    common.add_argument("--seed", type=int, default=None)

    parser = argparse.ArgumentParser(prog="specht-vdm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, mn=True):
        p = sub.add_parser(name, help=help_text, parents=[common])
        if mn:
            p.add_argument("m", type=int)
            p.add_argument("n", type=int)
        p.set_defaults(func=fn)
        return p

    add("syt", cmd_syt, "list standard tableaux with m rows and n columns")
    p = add("fayers", cmd_fayers, "print the Fayers matrix F")
    p.add_argument("--json", action="store_true")
    p = add("phi", cmd_phi, "print the coefficient matrix Phi")
    p.add_argument("--json", action="store_true")

    p = add("verify-t3", cmd_verify_t3, "check det(A*B) against the Phi expansion")
    p.add_argument("--A")
    p.add_argument("--B")
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--symbolic-limit", type=int, default=SYMBOLIC_LIMIT)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--corrupt-phi", nargs="?", const="1,1", type=_int_list, default=None,
                   metavar="I,J", help="add 1 to Phi[I][J] (1-based); negative-control hook")

    p = add("verify-t4", cmd_verify_t4, "check the symmetrised permutation sum")
    p.add_argument("--alpha")
    p.add_argument("--beta")

    p = add("kappa", cmd_kappa, "measure kappa for a tableau pair")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)

    p = add("vdm", cmd_vdm, "multivariable Vandermonde determinant and its expansions", mn=False)
    p.add_argument("--degrees", type=_int_list, required=True)
    p.add_argument("--split", type=int)
    p.add_argument("--order", choices=("kron", "deglex"), default="kron")
    p.add_argument("--points")
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--symbolic-limit", type=int, default=SYMBOLIC_LIMIT)
    p.add_argument("--names", default="x,y,z,w")
    p.add_argument("--expand", choices=("t1", "t2"))
    p.add_argument("--json", action="store_true")

    p = add("vdm-hom", cmd_vdm_hom, "homogeneous Vandermonde determinant", mn=False)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--points")
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--kernel", action="store_true")
    p.add_argument("--expand", choices=("separated", "collinear"))

    p = add("fekete", cmd_fekete, "per-N transfinite diameter estimates as CSV", mn=False)
    p.add_argument("--set", required=True)
    p.add_argument("--weights", "--degrees", dest="weights", type=_fraction_list)
    p.add_argument("--N-list", dest="N_list", type=_int_list, required=True)
    p.add_argument("--budget", type=int, default=4)

    p = add("multiplicativity", cmd_multiplicativity, "compare t(K1 x K2) with its factors", mn=False)
    p.add_argument("--set1", required=True)
    p.add_argument("--set2", required=True)
    p.add_argument("--weights", "--degrees", dest="weights", type=_fraction_list)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--budget", type=int, default=4)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except ResourceCapError as exc:
        _err(f"resource cap: {exc}")
        return EXIT_CAP
    except ConsistencyError as exc:
        _err(f"inconsistent result: {exc}")
        return EXIT_MISMATCH
    except (UsageError, DegenerateInputError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
