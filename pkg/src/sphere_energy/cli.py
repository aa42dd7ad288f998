"""Command-line interface.

Exit codes: 0 = success / verification passed, 1 = verification failed,
2 = usage or file-format error.
"""

from __future__ import annotations

import argparse
import sys

from .compression import symmetrize_to_fixpoint
from .fileio import (
    FileFormatError,
    dump_json,
    function_to_text,
    parse_function_file,
    parse_set_file,
    trace_to_csv,
)
from .functionals import additive_energy, l2_norm, mu_constant, u2_fourth_fast
from .hypercube import SphereSpec, sphere_points
from .optimize import OptimizerConfig, maximize_ratio
from .spectral import DenseFunction, Spectrum, fourier_forward, fourier_inverse
from .verify import (
    lemma_suite,
    remark_duality_check,
    signed_compression_search,
    verify_all,
)


def _cmd_mu(args) -> int:
    spec = SphereSpec(args.n, args.k)
    energy = additive_energy(sphere_points(spec), spec.n)
    mu = mu_constant(spec)
    print(f"E={energy} |A|={spec.size} mu={mu} ({float(mu)!r})")
    return 0


def _cmd_energy(args) -> int:
    n, pts = parse_set_file(args.set)
    print(f"E={additive_energy(pts, n)}")
    return 0


def _cmd_transform(args) -> int:
    f = parse_function_file(args.fn)
    if args.inverse:
        out = fourier_inverse(Spectrum(f.n, f.values))
    else:
        out = DenseFunction(f.n, fourier_forward(f).coeffs)
    sys.stdout.write(function_to_text(out))
    return 0


def _cmd_compress(args) -> int:
    f = parse_function_file(args.fn)
    granularity = "pair" if args.trace else "sweep"
    final, trace = symmetrize_to_fixpoint(
        f, tol=args.tol, max_sweeps=args.max_sweeps, granularity=granularity
    )
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(trace_to_csv(trace))
    print(f"converged={trace.converged} sweeps={trace.sweeps_run}")
    print(f"u2_fourth={u2_fourth_fast(final)!r} l2={l2_norm(final)!r}")
    sys.stdout.write(function_to_text(final))
    return 0


def _cmd_optimize(args) -> int:
    if args.set is not None:
        n, pts = parse_set_file(args.set)
        if not pts:
            print("error: support set is empty", file=sys.stderr)
            return 2
        spec = None
    elif args.n is not None and args.k is not None:
        spec = SphereSpec(args.n, args.k)
        n, pts = spec.n, sphere_points(spec)
    else:
        print("error: optimize needs --set FILE or both --n and --k", file=sys.stderr)
        return 2
    cfg = OptimizerConfig(starts=args.starts, seed=args.seed, tol=args.tol)
    result = maximize_ratio(n, pts, cfg)
    print(f"best_ratio={result.best_ratio!r}")
    if spec is not None:
        mu = mu_constant(spec)
        print(f"mu_constant={mu} ({float(mu)!r})")
    for t in result.starts:
        print(
            f"start={t.start} iterations={t.iterations} grad_norm={t.final_grad_norm:.3e} "
            f"ratio={t.ratio!r} converged={t.converged}"
        )
    return 0


def _cmd_verify(args) -> int:
    sweep = verify_all(args.n_max, trials=args.trials, seed=args.seed, tol=args.tol)
    for r in sweep.reports:
        print(
            f"n={r.spec.n} k={r.spec.k} mu={r.mu_exact} best_comp={r.best_ratio_compression!r} "
            f"best_grad={r.best_ratio_gradient!r} {'PASS' if r.passed else 'FAIL'}"
        )
    print(f"cells={len(sweep.reports)} all_pass={sweep.all_pass}")
    if args.out:
        dump_json(sweep.to_dict(), args.out)
    return 0 if sweep.all_pass else 1


def _cmd_lemma_test(args) -> int:
    spec = SphereSpec(args.n, args.k)
    report = lemma_suite(spec, trials=args.trials, seed=args.seed)
    print(f"support_preserved={report.support_ok}")
    print(f"worst_l2_drift={report.worst_l2_drift:.3e} (tol {report.l2_tol:.1e})")
    print(f"worst_u2_margin={report.worst_u2_margin:.3e} (tol -{report.u2_tol:.1e})")
    print(f"strict_triggers={report.strict_triggers} strict_violations={report.strict_violations}")
    if report.bracket_checked:
        print(f"worst_bracket_margin={report.worst_bracket_margin:.3e}")
    if args.signed_trials > 0:
        search = signed_compression_search(spec, trials=args.signed_trials, seed=args.seed)
        print(
            f"signed_search: trials={search.trials} worst_u2_margin={search.worst_u2_margin:.3e} "
            f"decreases={search.decreases_found} strictness_failures={search.strictness_failures}"
        )
    print(f"pass={report.passed}")
    return 0 if report.passed else 1


def _cmd_duality_test(args) -> int:
    if args.set is not None:
        n, chars = parse_set_file(args.set)
        if args.n is not None and args.n != n:
            print(f"error: --n {args.n} conflicts with set file dimension {n}", file=sys.stderr)
            return 2
    elif args.n is not None:
        n, chars = args.n, list(range(1 << args.n))
    else:
        print("error: duality-test needs --n or --set FILE", file=sys.stderr)
        return 2
    report = remark_duality_check(n, chars, trials=args.trials, seed=args.seed)
    print(
        f"n={report.n} support={report.support_size} trials={report.trials} "
        f"max_rel_dev={report.max_relative_deviation:.3e} pass={report.passed}"
    )
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphere-energy",
        description="Certify that constants maximize additive energy on Hamming spheres.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mu", help="closed-form ratio for a sphere (exact)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_mu)

    p = sub.add_parser("energy", help="exact additive energy of a point set")
    p.add_argument("--set", required=True, metavar="FILE")
    p.set_defaults(func=_cmd_energy)

    p = sub.add_parser("transform", help="Walsh-Hadamard transform of a function file")
    p.add_argument("--fn", required=True, metavar="FILE")
    p.add_argument("--inverse", action="store_true", help="treat the file as a spectrum")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("compress", help="iterate pair compressions to a fixpoint")
    p.add_argument("--fn", required=True, metavar="FILE")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max-sweeps", type=int, default=None)
    p.add_argument("--trace", metavar="CSV", help="write a per-pair trace CSV")
    p.set_defaults(func=_cmd_compress)

    p = sub.add_parser("optimize", help="multi-start gradient ascent on the u2 ratio")
    p.add_argument("--set", metavar="FILE")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--starts", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("verify", help="certify the theorem for all k, n <= n-max")
    p.add_argument("--n-max", type=int, required=True, dest="n_max")
    p.add_argument("--trials", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--out", metavar="JSON", help="write the full report as JSON")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("lemma-test", help="compression property suite on one sphere")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--signed-trials",
        type=int,
        default=0,
        help="also run the exploratory signed-function search",
    )
    p.set_defaults(func=_cmd_lemma_test)

    p = sub.add_parser("duality-test", help="l4 vs u2-of-spectrum ratio identity")
    p.add_argument("--n", type=int)
    p.add_argument("--set", metavar="FILE", help="character support (default: full space)")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_duality_test)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileFormatError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
