"""Command-line front end.

Subcommands: certify, preimage, degree, constants, bounds, oracle.
Every report is JSON on stdout with schema_version "1" and a canonical
echo of the parsed inputs; no timestamps, so identical invocations give
byte-identical output.  Exit codes: 0 success (or CertifiedTransverse),
1 Inconclusive verdict or oracle failure, 2 input error.

Varieties are read from JSON files (they carry polynomial text that goes
through the parser); isogenies are inline JSON arrays like '[2,1]'.
"""

import argparse
import json
import sys

from mpmath import iv, nstr

from . import certificates, heights
from .curves import WeierstrassCurve
from .isogenies import DiagonalIsogeny
from .oracle import (PrimeFieldCtx, degree_spot_check,
                     verify_maps_vs_group_law, verify_preimage_membership)
from .preimages import generate_preimage
from .products import (ProductSystem, preimage_multidegrees,
                       subvariety_from_dict, subvariety_to_dict)

SCHEMA_VERSION = "1"


class InputError(ValueError):
    pass


def _load_variety(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError("cannot read variety file: %s" % exc)
    except json.JSONDecodeError as exc:
        raise InputError("variety file is not valid JSON: %s" % exc)
    try:
        return subvariety_from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("bad variety payload: %s" % exc)


def _load_isogeny(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("isogeny must be a JSON array: %s" % exc)
    if isinstance(data, dict) and "alphas" in data:
        data = data["alphas"]
    if not isinstance(data, list):
        raise InputError("isogeny must be a JSON array of integers")
    try:
        return DiagonalIsogeny(data)
    except (TypeError, ValueError) as exc:
        raise InputError("bad isogeny: %s" % exc)


def _load_int_list(text, what):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("%s must be a JSON array: %s" % (what, exc))
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise InputError("%s must be a JSON array of integers" % what)
    return data


def _report(command, inputs, result):
    return {"schema_version": SCHEMA_VERSION, "command": command,
            "inputs": inputs, "result": result}


def _emit(report, out_path=None):
    text = json.dumps(report, indent=2)
    print(text)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")


def _table_rows(table):
    return [{"I": list(I), "deg": table.get(I)} for I in table.index_order()]


def cmd_certify(args):
    V = _load_variety(args.variety)
    inputs = {"variety": subvariety_to_dict(V)}
    crit = args.criterion
    if crit in ("auto", "corollary-curves", "theorem-main", "theorem-weak"):
        phi = _load_isogeny(args.isogeny)
        inputs["isogeny"] = list(phi.alphas)
        if crit == "auto":
            cert = certificates.certify_auto(V, phi)
        elif crit == "corollary-curves":
            cert = certificates.check_corollary_curves(V, phi)
        elif crit == "theorem-main":
            cert = certificates.check_theorem_main(V, phi)
        else:
            cert = certificates.check_theorem_weak(V, phi)
    elif crit == "theorem-a":
        if args.primes is None:
            raise InputError("theorem-a needs --primes")
        primes = _load_int_list(args.primes, "--primes")
        inputs["primes"] = primes
        cert = certificates.check_theorem_a(V, primes)
    elif crit == "corollary-identity":
        if (args.n is None) == (args.p is None):
            raise InputError("corollary-identity needs exactly one of --n / --p")
        if args.n is not None:
            inputs["n"] = args.n
            cert = certificates.check_corollary_identity(V, n=args.n)
        else:
            inputs["p"] = args.p
            cert = certificates.check_corollary_identity(V, p=args.p)
    else:  # pragma: no cover - argparse restricts choices
        raise InputError("unknown criterion %r" % crit)
    _emit(_report("certify", inputs, {"certificate": cert.to_dict()}))
    return 0 if cert.certified() else 1


def cmd_preimage(args):
    V = _load_variety(args.variety)
    phi = _load_isogeny(args.isogeny)
    pre = generate_preimage(V, phi)
    inputs = {"variety": subvariety_to_dict(V), "isogeny": list(phi.alphas)}
    result = {
        "equations": [str(eq) for eq in pre.equations],
        "excluded_locus": [{"j": row["j"], "alpha": row["alpha"],
                            "t": str(row["t"])} for row in pre.excluded_locus],
        "multidegrees": _table_rows(pre.degrees),
        "total_degree": pre.total_degree(),
    }
    _emit(_report("preimage", inputs, result))
    return 0


def cmd_degree(args):
    V = _load_variety(args.variety)
    phi = _load_isogeny(args.isogeny)
    table = preimage_multidegrees(V, phi)
    inputs = {"variety": subvariety_to_dict(V), "isogeny": list(phi.alphas)}
    result = {
        "variety_multidegrees": _table_rows(V.degrees),
        "variety_total_degree": V.total_degree(),
        "preimage_multidegrees": _table_rows(table),
        "preimage_total_degree": table.total_degree(),
        "isogeny_degree": phi.degree(),
    }
    _emit(_report("degree", inputs, result))
    return 0


def _load_curves(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("--curves must be JSON: %s" % exc)
    if isinstance(data, dict):
        data = [data]
    try:
        return [WeierstrassCurve(c["A"], c["B"]) for c in data]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("bad curve list: %s" % exc)


def cmd_constants(args):
    if args.curves:
        curves = _load_curves(args.curves)
        inputs = {"curves": [{"A": E.A, "B": E.B} for E in curves]}
    elif args.variety:
        V = _load_variety(args.variety)
        curves = list(V.system.curves)
        inputs = {"variety": subvariety_to_dict(V)}
    else:
        raise InputError("constants needs --curves or --variety")
    inputs["better"] = bool(args.better)
    inputs["precision_bits"] = args.prec
    rows = []
    with heights._prec(args.prec):
        tot1 = iv.mpf(0)
        tot2 = iv.mpf(0)
        for E in curves:
            c1, c2 = heights.c1_c2_curve(E, use_better=args.better, prec=args.prec)
            tot1 += iv.mpf(c1)
            tot2 += iv.mpf(c2)
            rows.append({"A": E.A, "B": E.B,
                         "c1": nstr(c1, 20), "c2": nstr(c2, 20),
                         "c3": nstr(heights.upper_endpoint(iv.mpf(c1) + iv.mpf(c2)), 20)})
        result = {
            "per_curve": rows,
            "c1_sum": nstr(heights.upper_endpoint(tot1), 20),
            "c2_sum": nstr(heights.upper_endpoint(tot2), 20),
            "c3_sum": nstr(heights.upper_endpoint(tot1 + tot2), 20),
            "rounding": "up",
        }
    _emit(_report("constants", inputs, result))
    return 0


def cmd_bounds(args):
    kind = args.kind
    prec = args.prec
    if kind == "c0":
        val = heights.c0(args.d1, args.d2, args.m, method=args.method, prec=prec)
        inputs = {"kind": kind, "d1": args.d1, "d2": args.d2, "m": args.m,
                  "method": args.method, "precision_bits": prec}
        result = {"value": nstr(val, 20), "rounding": "up"}
    elif kind == "zhang":
        val = heights.zhang_special_bound(args.n_factors, args.h2q, args.c3,
                                          prec=prec)
        inputs = {"kind": kind, "N": args.n_factors, "h2_Q": args.h2q,
                  "c3_product": args.c3, "precision_bits": prec}
        result = {"value": nstr(val, 20), "rounding": "up"}
    elif kind == "bezout":
        trivial, improved = heights.bezout_intersection_bounds(
            args.deg_pre, args.h2_pre, args.deg_b, args.h2_b, args.dim_b,
            args.n_factors, args.deg_phi, prec=prec)
        inputs = {"kind": kind, "deg_pre": args.deg_pre, "h2_pre": args.h2_pre,
                  "deg_B": args.deg_b, "h2_B": args.h2_b, "dim_B": args.dim_b,
                  "N": args.n_factors, "deg_phi": args.deg_phi,
                  "precision_bits": prec}
        result = {"trivial": nstr(trivial, 20), "improved": nstr(improved, 20),
                  "rounding": "up"}
    elif kind == "galateau-lambda":
        val = heights.galateau_lambda(args.n_factors, args.k)
        inputs = {"kind": kind, "N": args.n_factors, "k": args.k}
        result = {"value": val, "rounding": "exact"}
    elif kind == "essential-minimum":
        rep = heights.essential_minimum_image_bounds(
            args.n_factors, args.r, args.dl, args.alpha, args.degc,
            mode=args.mode, prec=prec)
        inputs = {"kind": kind, "precision_bits": prec}
        inputs.update(rep.inputs)
        result = rep.to_dict()
    else:  # pragma: no cover
        raise InputError("unknown bound kind %r" % kind)
    _emit(_report("bounds", inputs, result))
    return 0


def cmd_oracle(args):
    V = _load_variety(args.variety)
    phi = _load_isogeny(args.isogeny)
    primes = _load_int_list(args.primes, "--primes")
    inputs = {"variety": subvariety_to_dict(V), "isogeny": list(phi.alphas),
              "primes": primes}
    pre = generate_preimage(V, phi)
    results = []
    all_ok = True
    for p in primes:
        ctx = PrimeFieldCtx(p, V.system)
        maps_reports = []
        for idx in range(V.system.n_factors):
            rep = verify_maps_vs_group_law(ctx, idx, phi.alphas[idx])
            maps_reports.append(rep)
            all_ok = all_ok and rep["ok"]
        membership = verify_preimage_membership(ctx, pre)
        all_ok = all_ok and membership["ok"]
        spot = degree_spot_check(ctx, pre)
        results.append({"p": p, "maps": maps_reports, "membership": membership,
                        "spot_check": spot})
    report = _report("oracle", inputs, {"ok": all_ok, "per_prime": results})
    _emit(report, args.out)
    return 0 if all_ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ellprod",
        description="Preimages of subvarieties under diagonal isogenies on "
                    "products of elliptic curves: equations, transversality "
                    "certificates, degree bookkeeping, height-bound "
                    "constants, and a finite-field oracle.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="emit a transversality certificate")
    p.add_argument("--variety", required=True, help="subvariety JSON file")
    p.add_argument("--isogeny", help="inline JSON array, e.g. '[2,1]'")
    p.add_argument("--criterion", default="auto",
                   choices=["auto", "corollary-curves", "theorem-main",
                            "theorem-weak", "theorem-a", "corollary-identity"])
    p.add_argument("--primes", help="JSON array for theorem-a")
    p.add_argument("--n", type=int, help="integer for corollary-identity")
    p.add_argument("--p", type=int, help="prime for corollary-identity")
    p.set_defaults(func=cmd_certify, needs_isogeny=True)

    p = sub.add_parser("preimage", help="generate preimage equations")
    p.add_argument("--variety", required=True)
    p.add_argument("--isogeny", required=True)
    p.set_defaults(func=cmd_preimage)

    p = sub.add_parser("degree", help="degree and multidegree bookkeeping")
    p.add_argument("--variety", required=True)
    p.add_argument("--isogeny", required=True)
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("constants", help="per-curve height-comparison constants")
    p.add_argument("--curves", help="inline JSON, e.g. '[{\"A\":0,\"B\":1}]'")
    p.add_argument("--variety", help="subvariety JSON file (its curves)")
    p.add_argument("--better", action="store_true")
    p.add_argument("--prec", type=int, default=heights.DEFAULT_PREC)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("bounds", help="explicit height/degree bound values")
    p.add_argument("--kind", required=True,
                   choices=["c0", "zhang", "bezout", "galateau-lambda",
                            "essential-minimum"])
    p.add_argument("--prec", type=int, default=heights.DEFAULT_PREC)
    p.add_argument("--d1", type=int, default=0)
    p.add_argument("--d2", type=int, default=0)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--method", default="double_sum",
                   choices=["double_sum", "harmonic"])
    p.add_argument("--n-factors", type=int, default=2)
    p.add_argument("--h2q", type=float, default=0.0)
    p.add_argument("--c3", type=float, default=0.0)
    p.add_argument("--deg-pre", type=int, default=1)
    p.add_argument("--h2-pre", type=float, default=0.0)
    p.add_argument("--deg-b", type=int, default=1)
    p.add_argument("--h2-b", type=float, default=0.0)
    p.add_argument("--dim-b", type=int, default=1)
    p.add_argument("--deg-phi", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--dl", type=int, default=1)
    p.add_argument("--alpha", type=int, default=2)
    p.add_argument("--degc", type=int, default=1)
    p.add_argument("--mode", default="smart", choices=["smart", "naive"])
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("oracle", help="finite-field brute-force verification")
    p.add_argument("--variety", required=True)
    p.add_argument("--isogeny", required=True)
    p.add_argument("--primes", required=True, help="JSON array, e.g. '[7,11,13]'")
    p.add_argument("--out", help="also write the report to this path")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "needs_isogeny", False) and args.criterion not in (
            "theorem-a", "corollary-identity") and not args.isogeny:
        print("error: --isogeny is required for criterion %s" % args.criterion,
              file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except Exception as exc:  # parse/validation errors from the library
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
