"""Command-line front end.

JSON in, JSON out; deterministic for a fixed seed.  Exit codes: 0 success,
2 usage error, 3 invalid kernel, 4 degenerate parameters, 5 internal
consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time

from . import fast_kummer as fk
from . import general_kummer as gk
from . import isogeny as iso
from .counters import OpCounter, count_ops
from .errors import KummerError, UsageError
from .field import Field
from .forms import HomogeneousForm


def _field_from_args(args) -> Field:
    return Field(args.field_p, args.ext_degree)


def _parse_elem(field: Field, text: str):
    if "," in text:
        c0, c1 = text.split(",")
        return field((int(c0), int(c1)))
    return field(int(text))


def _parse_tuple(field: Field, text: str, n: int):
    parts = text.split(";") if ";" in text else text.split(",")
    if len(parts) == 2 * n and ";" not in text:
        parts = [",".join(parts[2 * i: 2 * i + 2]) for i in range(n)]
    if len(parts) != n:
        raise UsageError(f"expected {n} coordinates, got {len(parts)}")
    return tuple(_parse_elem(field, p.strip()) for p in parts)


def _fast_surface(args, field):
    theta = _parse_tuple(field, args.theta, 4)
    return fk.new_fast_surface(field, *theta)


def _emit(obj, out_path=None):
    text = json.dumps(obj, indent=1, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_surface(args) -> int:
    field = _field_from_args(args)
    if args.model == "fast":
        params = _fast_surface(args, field)
        out = params.to_json()
        out["constants"] = {
            "A": params.duals[0].to_json(),
            "B": params.duals[1].to_json(),
            "C": params.duals[2].to_json(),
            "D": params.duals[3].to_json(),
            "E": params.E.to_json(),
            "F": params.F.to_json(),
            "G": params.G.to_json(),
            "H": params.H.to_json(),
        }
        out["quartic"] = params.quartic().to_json()
    else:
        curve = gk.Genus2Curve(field, [int(c) for c in args.curve.split(",")])
        surface = gk.surface_from_curve(curve)
        out = {
            "p": str(field.p),
            "extension_degree": field.extension_degree,
            "curve": [c.to_json() for c in curve.f],
            "quartic": surface.quartic.to_json(),
        }
    _emit(out, args.out)
    return 0


def _load_kernel_file(path):
    with open(path) as fh:
        return json.load(fh)


def cmd_isogeny(args) -> int:
    field = _field_from_args(args)
    counter = OpCounter()
    rng = random.Random(args.seed)
    data = _load_kernel_file(args.kernel_file) if args.kernel_file else {}
    N = args.N or int(data.get("N", 0))
    if N < 3 or N % 2 == 0:
        raise UsageError("N must be odd and at least 3")
    with count_ops(counter):
        if args.model == "fast":
            params = _fast_surface(args, field)
            R = params.point([field(tuple(c) if isinstance(c, list) else int(c)) for c in data["R"]])
            S = params.point([field(tuple(c) if isinstance(c, list) else int(c)) for c in data["S"]])
            kernel = iso.IsogenyKernel.fast(params, N, R, S)
            result = iso.get_isogeny(params, kernel, branch=args.branch,
                                     force_enumeration=args.fallback_full_enumeration)
            out = result.to_json()
            out["domain"] = params.to_json()
            out["kernel"] = {"R": R.to_json(), "S": S.to_json()}
        else:
            curve = gk.Genus2Curve(field, [int(c) for c in args.curve.split(",")])
            table = gk.load_general_biquadratics(curve)
            R = tuple(field(tuple(c) if isinstance(c, list) else int(c)) for c in data["R"])
            S = tuple(field(tuple(c) if isinstance(c, list) else int(c)) for c in data["S"])
            kernel = iso.IsogenyKernel.general(table, N, R, S)
            result = iso.general_pipeline(table, kernel, rng,
                                          force_enumeration=args.fallback_full_enumeration)
            out = {
                "model": "general",
                "N": N,
                "phi": [f.to_json() for f in result.map],
                "image": {"curve": [c.to_json() for c in result.image.f]},
                "u": [x.to_json() for x in result.u],
                "domain": {"curve": [c.to_json() for c in curve.f]},
                "kernel": {"R": [x.to_json() for x in R], "S": [x.to_json() for x in S]},
            }
    if args.counters:
        out["op_counts"] = counter.snapshot()
    _emit(out, args.out)
    return 0


def cmd_evaluate(args) -> int:
    field = _field_from_args(args)
    with open(args.map_file) as fh:
        data = json.load(fh)
    N = int(data["N"])
    forms = [HomogeneousForm.from_json(field, N, f) for f in data["phi"]]
    point = _parse_tuple(field, args.point, 4)
    image = tuple(f.evaluate(point) for f in forms)
    out = {"point": [c.to_json() for c in point], "image": [c.to_json() for c in image]}
    if "image" in data and "theta" in data["image"]:
        theta = tuple(field(tuple(c) if isinstance(c, list) else c) for c in data["image"]["theta"])
        params = fk.new_fast_surface(field, *theta)
        out["on_image_surface"] = fk.on_surface(params, image)
    _emit(out, args.out)
    return 0


def cmd_multiply(args) -> int:
    field = _field_from_args(args)
    params = _fast_surface(args, field)
    point = params.point(_parse_tuple(field, args.point, 4))
    result = fk.scalar_mul(params, args.n, point)
    _emit({"n": args.n, "point": point.to_json(), "result": result.to_json()}, args.out)
    return 0


def cmd_diagonalize(args) -> int:
    field = _field_from_args(args)
    quads = []
    for text in args.factors.split(";"):
        quads.append([field(int(c)) for c in text.split(",")])
    if len(quads) != 3:
        raise UsageError("expected three quadratic factors separated by ';'")
    eig_pairs = None
    if args.eigenvalues:
        vals = [field(int(v)) for v in args.eigenvalues.split(",")]
        if len(vals) != 4:
            raise UsageError("expected four eigenvalues")
        eig_pairs = ((vals[0], vals[1]), (vals[2], vals[3]))
    from . import unipoly

    m1 = gk.two_torsion_matrix(field, quads[0], unipoly.mul(quads[1], quads[2]))
    m2 = gk.two_torsion_matrix(field, quads[1], unipoly.mul(quads[0], quads[2]))
    p, quartic = gk.sparse_model_from_factored_curve(field, *quads, eig_pairs)
    out = {
        "M1": m1.to_json(),
        "M2": m2.to_json(),
        "res_H1_H2H3": unipoly.resultant(quads[0], unipoly.mul(quads[1], quads[2])).to_json(),
        "res_H2_H1H3": unipoly.resultant(quads[1], unipoly.mul(quads[0], quads[2])).to_json(),
        "P": p.to_json(),
        "sparse_quartic": quartic.to_json(),
    }
    _emit(out, args.out)
    return 0


def cmd_verify(args) -> int:
    from .verify import run_suites

    try:
        results = run_suites(args.suite.split(","), seed=args.seed)
    except KeyError as ex:
        raise UsageError(f"unknown suite {ex}") from ex
    out = {"results": [{"name": n, "passed": ok, "detail": d} for n, ok, d in results]}
    ok_all = all(ok for _, ok, _ in results)
    out["passed"] = ok_all
    _emit(out, args.out)
    return 0 if ok_all else 5


def cmd_bench(args) -> int:
    from .superspecial import find_superspecial_prime, random_superspecial_surface, sample_kernel_pair

    ns = [int(x) for x in args.N.split(",")]
    rows = []
    for N in ns:
        p = find_superspecial_prime(args.log2p, N)
        field = Field(p, 2)
        rng = random.Random(args.seed)
        params = random_superspecial_surface(field, rng)
        kernel = sample_kernel_pair(params, N, rng)
        branches = ["5"] if N == 5 else ["GE", "sqrt"]
        for branch in branches:
            counter = OpCounter()
            t0 = time.perf_counter()
            with count_ops(counter):
                result = iso.get_isogeny(params, kernel, branch=branch)
            wall = time.perf_counter() - t0
            predicted = "5" if N == 5 else iso.cost_model(N, p.bit_length())["branch"]
            rows.append({
                "N": N,
                "log2p": p.bit_length(),
                "branch": branch,
                "predicted_branch": predicted,
                "wall_time": round(wall, 6),
                "find_basis_time": round(result.timings["find_basis"], 6),
                "intersection_time": round(result.timings["find_intersection"], 6),
                "scaling_time": round(result.timings["scaling"], 6),
                "M": counter.M, "S": counter.S, "I": counter.I,
                "a": counter.a, "Sq": counter.Sq,
            })
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kummer",
        description="Genus-2 Kummer surface arithmetic and (N,N)-isogenies over finite fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, model=True):
        p.add_argument("--field-p", type=int, required=True, help="odd prime modulus")
        p.add_argument("--ext-degree", type=int, default=1, choices=(1, 2))
        if model:
            p.add_argument("--model", choices=("fast", "general"), default="fast")
            p.add_argument("--theta", help="a,b,c,d for the fast model")
            p.add_argument("--curve", help="f0,...,f6 for the general model")
        p.add_argument("--out", help="write JSON/CSV here instead of stdout")

    p = sub.add_parser("surface", help="construct a surface and print its constants")
    common(p)
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("isogeny", help="compute an (N,N)-isogeny from a kernel file")
    common(p)
    p.add_argument("--N", type=int)
    p.add_argument("--kernel-file", required=True, help="JSON with R, S (and optional N)")
    p.add_argument("--branch", choices=("auto", "5", "GE", "sqrt"), default="auto")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--counters", action="store_true", help="include operation counts")
    p.add_argument("--fallback-full-enumeration", action="store_true",
                   help="build invariant bases from all index multisets")
    p.set_defaults(func=cmd_isogeny)

    p = sub.add_parser("evaluate", help="evaluate a stored isogeny at a point")
    common(p, model=False)
    p.add_argument("--map-file", required=True)
    p.add_argument("--point", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("multiply", help="scalar multiplication on the fast model")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--point", required=True)
    p.set_defaults(func=cmd_multiply)

    p = sub.add_parser("diagonalize", help="diagonalise the two-torsion of y^2 = H1 H2 H3")
    common(p, model=False)
    p.add_argument("--factors", required=True, help="three quadratics 'h0,h1,h2;...'")
    p.add_argument("--eigenvalues", help="l1,l2,u1,u2 eigenvalue ordering")
    p.set_defaults(func=cmd_diagonalize)

    p = sub.add_parser("verify", help="run identity verification suites")
    p.add_argument("--suite", default="all",
                   help="comma list: theorem41,biquadratics,f101,dimensions,divpolys")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="benchmark the isogeny pipeline")
    p.add_argument("--N", required=True, help="comma list of odd N")
    p.add_argument("--log2p", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return 2 if ex.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as ex:
        print(json.dumps({"error": str(ex), "kind": "usage"}), file=sys.stderr)
        return 2
    except KummerError as ex:
        print(json.dumps({"error": str(ex), "kind": type(ex).__name__}), file=sys.stderr)
        return ex.exit_code
    except FileNotFoundError as ex:
        print(json.dumps({"error": str(ex), "kind": "usage"}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
