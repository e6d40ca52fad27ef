"""Command-line interface.

Subcommands: solve (multi-start eigenpairs), certify (residual certificates
for a given eigenvalue), refine (two-stage polish of a candidate), spheres
(sample + detect spherical components), gen (matrix family generator), and
bench (benchmark grid).  Exit codes: 0 on success, 2 when fewer than the
requested eigenpairs were found, 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bench import run_bench
from .certificates import certify, res_min
from .config import RefineConfig, SolveConfig, SphereConfig
from .families import FAMILIES, FamilySpec, gen_matrix
from .io import MatrixFormatError, pairs_to_records, parse_matrix_file, save_matrix_file, sphere_to_record
from .multistart import solve_left
from .quat import Quaternion
from .refine import refine_eigenvalue
from .spheres import detect_components

__all__ = ["main"]


def _parse_lambda(text: str) -> Quaternion:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"--lambda expects 4 comma-separated numbers, got {text!r}")
    return Quaternion(*(float(p) for p in parts))


def _fmt_lam(q: Quaternion) -> str:
    return f"[{q.a:+.12e} {q.b:+.12e}i {q.c:+.12e}j {q.d:+.12e}k]"


def _cmd_solve(args) -> int:
    A = parse_matrix_file(args.matrix)
    cfg = SolveConfig(
        k=args.k,
        seed=args.seed,
        accept_tol_rel=args.accept_tol,
        dedup_tol=args.dedup_tol,
    )
    pairs, stats = solve_left(A, cfg)
    k, _ = cfg.resolved(A.n)
    for p in pairs:
        c = p.certificate
        print(
            f"lambda = {_fmt_lam(p.lam)}  res_pair={c.res_pair:.3e}  "
            f"res_min={c.res_min:.3e}  iters={p.iterations}  trial={p.trial}"
        )
    print(
        f"found {len(pairs)}/{k} eigenpairs  trials={stats.trials}  "
        f"restarts={stats.restarts}  time={stats.elapsed:.3f}s"
    )
    if stats.continuum_hint:
        print("note: many distinct certified eigenvalues; possible non-isolated (spherical) structure")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(pairs_to_records(pairs), fh, indent=1)
        print(f"wrote {args.json}")
    return 0 if len(pairs) >= k else 2


def _cmd_certify(args) -> int:
    A = parse_matrix_file(args.matrix)
    lam = _parse_lambda(args.lam)
    rmin, v = res_min(A, lam, with_vector=True)
    cert = certify(A, lam, v)
    print(f"lambda     = {_fmt_lam(lam)}")
    print(f"res_min    = {cert.res_min:.6e}")
    print(f"res_min_rel= {cert.res_min_rel:.6e}  (scale s(A) = {cert.scale:.6e})")
    print(f"res_pair   = {cert.res_pair:.6e}  (minimizing vector)")
    return 0


def _cmd_refine(args) -> int:
    A = parse_matrix_file(args.matrix)
    lam0 = _parse_lambda(args.lam)
    pair = refine_eigenvalue(A, lam0, RefineConfig(seed=args.seed))
    c = pair.certificate
    print(f"lambda0    = {_fmt_lam(lam0)}")
    print(f"lambda*    = {_fmt_lam(pair.lam)}")
    print(f"res_pair   = {c.res_pair:.6e}")
    print(f"res_min    = {c.res_min:.6e}  (rel {c.res_min_rel:.6e})")
    return 0


def _cmd_spheres(args) -> int:
    A = parse_matrix_file(args.matrix)
    cfg = SolveConfig(k=args.samples, seed=args.seed)
    pairs, _ = solve_left(A, cfg)
    models, isolated = detect_components(A, pairs, SphereConfig())
    for m in models:
        print(
            f"sphere: center={_fmt_lam(m.center)} radius={m.radius:.9g} "
            f"inliers={len(m.inliers)}/{len(pairs)} max_dev={m.max_dev:.3e}"
        )
        print(f"        plane normal={np.array2string(m.normal, precision=6)} offset={m.offset:.9g}")
    for p in isolated:
        print(f"isolated: {_fmt_lam(p.lam)}  res_min={p.certificate.res_min:.3e}")
    if not models:
        print(f"no spherical component detected ({len(isolated)} isolated candidates)")
    if args.json:
        payload = {
            "spheres": [sphere_to_record(m) for m in models],
            "isolated": pairs_to_records(isolated),
        }
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=1)
        print(f"wrote {args.json}")
    return 0


def _cmd_gen(args) -> int:
    spec = FamilySpec(family=args.family, n=args.n, seed=args.seed, density=args.density)
    save_matrix_file(gen_matrix(spec), args.output)
    print(f"wrote {args.output}")
    return 0


def _cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    n_mat = [int(s) for s in args.nmat.split(",")]
    families = args.families.split(",")
    report = run_bench(families=families, sizes=sizes, n_mat=n_mat, base_seed=args.seed)
    for cell in report.cells:
        print(
            f"{cell.family:10s} n={cell.n:3d}  success={cell.success_rate:6.2f}%  "
            f"med(maxRes)={cell.med_max_res:.3e}  rel={cell.med_max_res_rel:.3e}  "
            f"t/pair={cell.mean_time_per_pair * 1e3:.2f}ms  failures={len(cell.failures)}"
        )
    print(f"total {report.total_seconds:.1f}s")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report.to_dict(), fh, indent=1)
        print(f"wrote {args.out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="leigq", description="Left eigenvalues of quaternion matrices")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute distinct left eigenpairs")
    p.add_argument("matrix")
    p.add_argument("--k", type=int, default=None, help="requested count (default: n)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--accept-tol", type=float, default=1e-10, dest="accept_tol")
    p.add_argument("--dedup-tol", type=float, default=1e-5, dest="dedup_tol")
    p.add_argument("--json", default=None, help="write accepted pairs to this JSON file")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("certify", help="residual certificates for a given eigenvalue")
    p.add_argument("matrix")
    p.add_argument("--lambda", dest="lam", required=True, help="a,b,c,d")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("refine", help="two-stage polish of an eigenvalue candidate")
    p.add_argument("matrix")
    p.add_argument("--lambda", dest="lam", required=True, help="a,b,c,d")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_refine)

    p = sub.add_parser("spheres", help="sample the spectrum and detect spherical components")
    p.add_argument("matrix")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", default=None)
    p.set_defaults(func=_cmd_spheres)

    p = sub.add_parser("gen", help="generate a benchmark family matrix")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=0.1)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bench", help="run the benchmark grid")
    p.add_argument("--sizes", default="2,3,4,8,16,32")
    p.add_argument("--nmat", default="200,200,100,50,25,10")
    p.add_argument("--families", default=",".join(FAMILIES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MatrixFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
