"""Command line front end.

Exit codes: 0 success/PASS, 2 verification FAIL or oracle mismatch, 1 input
error, 4 invalid order, 5 unsupported oracle target, 3 internal inconsistency.
"""

import argparse
import os
import sys

from . import invariants as inv
from .errors import ACNFError, UnsupportedTargetError
from .finite import global_unit_index, roots_of_unity
from .oracle import fiber_product_order, form_class_number
from .order import conductor, discriminant, maximal_order, singular_primes
from .problem import build_order, dumps, load_problem

DEFAULT_PRIME_BOUND = 10**5


def _leading(lt):
    return {
        "rational_factor": lt.rational_factor,
        "pi_exponent": lt.pi_exponent,
        "regulator_factor": lt.regulator_factor,
        "abs_disc": lt.abs_disc,
        "float_value": lt.float_value,
    }


def _fmt_leading(lt):
    parts = [str(lt.rational_factor)]
    if lt.pi_exponent:
        parts.append("pi" if lt.pi_exponent == 1 else f"pi^{lt.pi_exponent}")
    if lt.regulator_factor != 1.0:
        parts.append(f"{lt.regulator_factor!r}")
    s = " * ".join(parts)
    if lt.abs_disc != 1:
        s += f" / sqrt({lt.abs_disc})"
    return f"{s}  (~ {lt.float_value:.12g})"


def describe_data(order):
    alg = order.algebra
    c = conductor(order)
    w, _ = roots_of_unity(order)
    comps = []
    for comp in alg.components:
        comps.append({
            "poly": list(comp.poly), "degree": comp.degree, "disc": comp.disc,
            "r1": comp.r1, "r2": comp.r2, "w": comp.w, "h": comp.h,
            "regulator": comp.regulator,
            "integral_basis": [list(row) for row in comp.integral_basis],
        })
    return {
        "signature": {"n": alg.n, "r1": alg.r1, "r2": alg.r2, "m": alg.m, "r": alg.r},
        "components": comps,
        "order_basis": [list(col) for col in order.basis],
        "index": order.index,
        "conductor": {"basis": [list(col) for col in c.basis], "norm": c.norm},
        "singular_primes": [
            {"p": sp.p, "primes_above": list(sp.primes_above), "primes_below": list(sp.primes_below),
             "local_quotient_size": sp.local_quotient_size, "local_unit_index": sp.local_unit_index}
            for sp in singular_primes(order)
        ],
        "disc": discriminant(order),
        "w": w,
        "unit_index": global_unit_index(order),
        "h": inv.class_number(order),
        "regulator": inv.regulator(order),
    }


def _print_describe(d, out):
    s = d["signature"]
    print(f"algebra: n={s['n']} r1={s['r1']} r2={s['r2']} m={s['m']} r={s['r']}", file=out)
    for i, c in enumerate(d["components"]):
        basis = ", ".join("(" + ", ".join(str(x) for x in row) + ")" for row in c["integral_basis"])
        print(f"  K{i + 1}: poly={c['poly']} disc={c['disc']} h={c['h']} w={c['w']} "
              f"R={c['regulator']!r}", file=out)
        print(f"      integral basis over the power basis: {basis}", file=out)
    print("order basis (columns): " + " ".join(str(tuple(c)) for c in d["order_basis"]), file=out)
    print(f"index #(O~/O) = {d['index']}", file=out)
    print("conductor basis (columns): " + " ".join(str(tuple(c)) for c in d["conductor"]["basis"])
          + f"   norm = {d['conductor']['norm']}", file=out)
    if d["singular_primes"]:
        print(f"{'p':>6} {'N(P) above':>16} {'N(p) below':>12} {'#(O~/O)_p':>10} {'local units':>12}",
              file=out)
        for sp in d["singular_primes"]:
            print(f"{sp['p']:>6} {str(sp['primes_above']):>16} {str(sp['primes_below']):>12} "
                  f"{sp['local_quotient_size']:>10} {sp['local_unit_index']:>12}", file=out)
    else:
        print("no singular primes", file=out)
    print(f"Disc = {d['disc']}  w = {d['w']}  [O~^x:O^x] = {d['unit_index']}  "
          f"h = {d['h']}  R = {d['regulator']!r}", file=out)


def verify_data(order):
    rep = inv.verify_acnf(order)
    return rep, {
        "verdict": rep.verdict,
        "lhs": _leading(rep.lhs),
        "rhs": _leading(rep.rhs),
        "rhs_normalized": _leading(rep.rhs_normalized),
        "exact_match": rep.exact_match,
        "regulator_ratio": rep.regulator_ratio,
        "unit_lattice_index": rep.lattice_index,
        "regulator_rel_diff": rep.regulator_rel_diff,
        "value_rel_diff": rep.value_rel_diff,
        "invariants": rep.invariants,
    }


def _print_verify(d, out):
    inv_ = d["invariants"]
    print(f"n={inv_['n']} r1={inv_['r1']} r2={inv_['r2']} m={inv_['m']} r={inv_['r']}  "
          f"index={inv_['index']}  conductor norm={inv_['conductor_norm']}", file=out)
    print(f"Disc={inv_['disc']}  w={inv_['w']}  [O~^x:O^x]={inv_['unit_index']}  h={inv_['h']}  "
          f"R={inv_['regulator']!r} (direct {inv_['regulator_direct']!r})", file=out)
    print(f"zeta correction lim zeta_O~/zeta_O = {inv_['zeta_correction']}", file=out)
    print(f"LHS  lim (s-1)^m zeta_O(s) = {_fmt_leading(d['_lhs'])}", file=out)
    print(f"RHS  2^r1 (2pi)^r2 hR/(w sqrt|Disc|) = {_fmt_leading(d['_rhs'])}", file=out)
    print(f"exact parts agree: {d['exact_match']}   regulator rel. diff: {d['regulator_rel_diff']:.3e}",
          file=out)
    print(d["verdict"], file=out)


def cmd_describe(args, out):
    order = build_order(load_problem(args.file))
    d = describe_data(order)
    if args.json:
        print(dumps(d), file=out)
    else:
        _print_describe(d, out)
    return 0


def _verify(order, args, out):
    rep, d = verify_data(order)
    if args.json:
        print(dumps(d), file=out)
    else:
        _print_verify({**d, "_lhs": rep.lhs, "_rhs": rep.rhs}, out)
    return 0 if rep.verdict == "PASS" else 2


def cmd_verify(args, out):
    return _verify(build_order(load_problem(args.file)), args, out)


def cmd_fiber_product(args, out):
    return _verify(fiber_product_order(args.p), args, out)


def cmd_oracle_h(args, out):
    order = build_order(load_problem(args.file))
    alg = order.algebra
    if alg.m != 1 or alg.n != 2 or alg.r2 != 1:
        raise UnsupportedTargetError("oracle-h covers orders in a single imaginary quadratic field")
    h_formula = inv.class_number(order)
    D = discriminant(order)
    h_forms = form_class_number(D)
    match = h_formula == h_forms
    if args.json:
        print(dumps({"disc": D, "h_formula": h_formula, "h_forms": h_forms, "match": match}), file=out)
    else:
        print(f"Disc={D}: h(formula)={h_formula}, h(forms)={h_forms}, "
              f"{'MATCH' if match else 'MISMATCH'}", file=out)
    return 0 if match else 2


def _parse_s(text):
    try:
        return int(text)
    except ValueError:
        return float(text)


def cmd_zeta(args, out):
    order = build_order(load_problem(args.file))
    s = _parse_s(args.s)
    bound = args.prime_bound
    if bound is None:
        bound = int(os.environ.get("ACNF_PRIME_BOUND", DEFAULT_PRIME_BOUND))
    z = inv.zeta_partial(order, s, bound)
    z_max = inv.zeta_partial(maximal_order(order.algebra), s, bound)
    corr = inv.zeta_correction_at(order, s, bound)
    d = {"s": s, "prime_bound": bound, "zeta_order": z, "zeta_maximal": z_max,
         "correction": corr, "zeta_maximal_times_correction": z_max * float(corr)}
    if args.json:
        print(dumps(d), file=out)
    else:
        print(f"s = {s}, primes <= {bound}", file=out)
        print(f"partial zeta_O(s)              = {z!r}", file=out)
        print(f"partial zeta_O~(s)             = {z_max!r}", file=out)
        print(f"correction zeta_O/zeta_O~ at s = {corr}", file=out)
        print(f"zeta_O~ * correction           = {z_max * float(corr)!r}", file=out)
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    parser = argparse.ArgumentParser(
        prog="acnf", description="Invariants of orders in products of number fields and the "
                                 "analytic class number formula.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("describe", parents=[common], help="print all invariants of an order")
    p.add_argument("file")
    p.set_defaults(func=cmd_describe)
    p = sub.add_parser("verify", parents=[common], help="compare both sides of the formula")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("fiber-product", parents=[common], help="verify Z x_{F_p} Z")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_fiber_product)
    p = sub.add_parser("oracle-h", parents=[common], help="class number vs reduced-form count")
    p.add_argument("file")
    p.set_defaults(func=cmd_oracle_h)
    p = sub.add_parser("zeta", parents=[common], help="truncated Euler products")
    p.add_argument("file")
    p.add_argument("--s", default="2")
    p.add_argument("--prime-bound", type=int, default=None,
                   help=f"default: $ACNF_PRIME_BOUND or {DEFAULT_PRIME_BOUND}")
    p.set_defaults(func=cmd_zeta)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ACNFError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"error: InputError: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
