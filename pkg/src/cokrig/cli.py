"""Command-line interface: ``cokrig <subcommand> [options]``.

Every option can also be set through an environment variable named
``COKRIG_<OPTION>`` (upper case, dashes as underscores, e.g.
``COKRIG_N_MAX=128``). Flags given on the command line take precedence.

Exit codes: 0 success / check passed, 1 usage or operational error,
2 check failed (``equiv``, ``verify-weights``, ``mc-validate``).
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import __version__
from .closedform import verify_weights
from .covariance import BivariateModel
from .design import load_design
from .efficiency import asymptotic_efficiency, read_csv, sweep, write_csv
from .equivalence import BivariateMaternSpec, check_equivalence_conditions
from .exceptions import CokrigError, DesignError
from .montecarlo import MIN_SAMPLES, mc_validate
from .predictor import SUPPORT_THRESHOLD, cokrige, krige
from .svgplot import render_efficiency_svg

EXIT_OK, EXIT_ERROR, EXIT_CHECK_FAILED = 0, 1, 2
ENV_PREFIX = "COKRIG_"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _float_list(text):
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    return values


def _apply_env(parser):
    for action in parser._actions:
        if not action.option_strings or action.dest in ("help", "version"):
            continue
        key = ENV_PREFIX + action.dest.upper()
        if key in os.environ:
            action.default = os.environ[key]
            action.required = False


def _positive(name, value):
    if not (math.isfinite(value) and value > 0):
        raise UsageError(f"--{name} must be > 0, got {value}")


def _even_n(name, value):
    if value < 2 or value % 2:
        raise UsageError(f"--{name} must be an even integer >= 2, got {value}")


def _corr(name, value):
    if not (math.isfinite(value) and abs(value) < 1):
        raise UsageError(f"--{name} must satisfy |r| < 1 (the joint covariance is singular at |r| = 1), got {value}")


def cmd_sweep(args):
    _even_n("n-min", args.n_min)
    _even_n("n-max", args.n_max)
    if args.n_min > args.n_max:
        raise UsageError("--n-min must not exceed --n-max")
    for a in args.alphas:
        _positive("alphas", a)
    for r in args.rs:
        _corr("rs", r)
    _positive("sigma11", args.sigma11)
    _positive("sigma22", args.sigma22)
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    ns = range(args.n_min, args.n_max + 1, 2)
    records = sweep(ns, args.alphas, args.rs, args.sigma11, args.sigma22, workers=args.workers)
    write_csv(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    return EXIT_OK


def cmd_plot(args):
    records = read_csv(args.csv)
    if not records:
        raise UsageError(f"{args.csv}: no data rows")
    with open(args.out, "w", newline="") as fh:
        fh.write(render_efficiency_svg(records))
    print(f"wrote {args.out} ({len({r.r for r in records})} panels)")
    return EXIT_OK


def cmd_verify_weights(args):
    _even_n("n", args.n)
    _positive("alpha", args.alpha)
    _corr("r", args.r)
    chk = verify_weights(args.n, args.alpha, args.r)
    labels = ("b1 Y1(-2/n)", "b2 Y1(+2/n)", "b3 Y2(-2/n)", "b4 Y2(-1/n)", "b5 Y2(+1/n)", "b6 Y2(+2/n)")
    print(f"verify-weights n={chk.n} alpha={chk.alpha:g} r={chk.r:g}")
    print(f"{'weight':<12} {'dense':>24} {'closed form':>24} {'|diff|':>10}")
    for lab, d, c in zip(labels, chk.dense, chk.closed):
        print(f"{lab:<12} {d:>24.17g} {c:>24.17g} {abs(d - c):>10.3e}")
    print(f"max abs deviation: {chk.max_deviation:.3e}")
    print(f"off-support weights above {SUPPORT_THRESHOLD:g}: {chk.off_support_count} (max {chk.off_support_max:.3e})")
    print(f"variance dense={chk.dense_variance:.17g} closed={chk.closed_variance:.17g} "
          f"rel_err={chk.variance_rel_error:.3e}")
    print("result: " + ("PASS" if chk.ok else "FAIL"))
    return EXIT_OK if chk.ok else EXIT_CHECK_FAILED


def _print_prediction(label, pred, show_all):
    rows = [(v, s, w) for (v, s), w in pred.weight_map.items() if show_all or abs(w) > SUPPORT_THRESHOLD]
    print(f"{label}: {len(pred.support())} nonzero weights (|w| > {SUPPORT_THRESHOLD:g}) of {len(pred.weights)}")
    print(f"  {'var':>3} {'site':>24} {'weight':>24}")
    for v, s, w in rows:
        print(f"  {v:>3} {s:>24.17g} {w:>24.17g}")
    print(f"  variance: {pred.variance:.17g}")


def cmd_predict(args):
    _positive("sigma11", args.sigma11)
    _positive("sigma22", args.sigma22)
    _positive("alpha", args.alpha)
    _positive("nu", args.nu)
    _corr("r", args.r)
    design = load_design(args.design)
    if design.n_obs == 0:
        raise DesignError(f"{args.design}: design has no observations")
    model = BivariateModel(args.sigma11, args.sigma22, args.r, args.alpha, args.nu)
    print(f"design: {len(design.sites1)} Y1 sites, {len(design.sites2)} Y2 sites, target {design.target:g}")
    kp = None
    if design.sites1:
        kp = krige(design, model)
        _print_prediction("kriging", kp, args.all_weights)
    else:
        print("kriging: unavailable (no Y1 observations)")
    cp = cokrige(design, model)
    _print_prediction("cokriging", cp, args.all_weights)
    if kp is not None:
        ratio = cp.variance / kp.variance if kp.variance > 0 else float("nan")
        print(f"ratio cokriging/kriging variance: {ratio:.12g}")
    return EXIT_OK


def cmd_equiv(args):
    spec1 = BivariateMaternSpec(args.sigma11_1, args.sigma22_1, args.sigma12_1, args.alpha_1, args.nu_1)
    spec2 = BivariateMaternSpec(args.sigma11_2, args.sigma22_2, args.sigma12_2, args.alpha_2, args.nu_2)
    _positive("rel-tol", args.rel_tol)
    verdict = check_equivalence_conditions(spec1, spec2, args.rel_tol)
    sys.stdout.write(verdict.format())
    return EXIT_OK if verdict.satisfied else EXIT_CHECK_FAILED


def cmd_mc_validate(args):
    _even_n("n", args.n)
    _positive("alpha", args.alpha)
    _corr("r", args.r)
    if args.samples < MIN_SAMPLES:
        raise UsageError(f"--samples must be >= {MIN_SAMPLES}, got {args.samples}")
    report = mc_validate(args.n, args.alpha, args.r, args.samples, args.seed)
    sys.stdout.write(report.format())
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def build_parser():
    parser = _Parser(prog="cokrig", description="Exact kriging/cokriging study tools.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("sweep", help="relative-efficiency sweep over the interleaved design, written as CSV")
    p.add_argument("--alphas", type=_float_list, default=[2.0, 4.0, 8.0], help="comma-separated scales (default 2,4,8)")
    p.add_argument("--rs", type=_float_list, default=[0.2, 0.5], help="comma-separated correlations (default 0.2,0.5)")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=64)
    p.add_argument("--sigma11", type=float, default=1.0)
    p.add_argument("--sigma22", type=float, default=1.0)
    p.add_argument("--workers", type=int, default=1, help="threads evaluating grid points")
    p.add_argument("--out", default="efficiency.csv", help="output CSV path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("plot", help="render a sweep CSV as an SVG figure")
    p.add_argument("--csv", required=True, help="input CSV written by 'sweep'")
    p.add_argument("--out", default="efficiency.svg", help="output SVG path")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("verify-weights", help="compare dense cokriging weights with the closed forms")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--r", type=float, default=0.5)
    p.set_defaults(func=cmd_verify_weights)

    p = sub.add_parser("predict", help="krige and cokrige Y1 at the target of a JSON design file")
    p.add_argument("design", help='JSON file with "sites1", "sites2" and "target"')
    p.add_argument("--sigma11", type=float, default=1.0)
    p.add_argument("--sigma22", type=float, default=1.0)
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--nu", type=float, default=0.5)
    p.add_argument("--all-weights", action="store_true", help="also list weights below 1e-10")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("equiv", help="check the sufficient conditions for equivalent Matérn measures")
    for k in ("1", "2"):
        p.add_argument(f"--sigma11-{k}", type=float, required=True)
        p.add_argument(f"--sigma22-{k}", type=float, required=True)
        p.add_argument(f"--sigma12-{k}", type=float, required=True)
        p.add_argument(f"--alpha-{k}", type=float, required=True)
        p.add_argument(f"--nu-{k}", type=float, default=0.5)
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("mc-validate", help="check exact variances against seeded Monte Carlo draws")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_mc_validate)

    for subparser in sub.choices.values():
        _apply_env(subparser)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CokrigError, OSError, ValueError) as exc:
        print(f"cokrig {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
