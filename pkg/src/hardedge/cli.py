"""Command-line front end: CSV tables and machine-readable check reports.

Every subcommand writes one metadata comment line (prefixed '#'), a CSV
header row, and data rows with full-precision (17 significant digit)
numeric cells.  Exit codes:

    0  success
    1  usage error (unknown flags, missing arguments)
    2  domain error (inputs outside an operation's domain)
    3  numeric error (a computation failed internally)
    4  a *-check subcommand ran fine but the claim failed its tolerance
"""

import argparse
import math
import sys

import numpy as np

from . import __version__
from .distributions import SCALINGS, finite_table, limit_table
from .errors import DomainError, HardEdgeError, NumericError
from .expansion import (
    DEFAULT_ORDERS,
    STUDY_NODES,
    conjecture_residual,
    kernel_expansion_rate,
    make_grid,
    mehler_heine_residual,
    optimal_scaling_residual,
    rate_report,
    uncorrected_difference,
)
from .fredholm import log_derivative, resolvent_quadratic_form
from .kernels import bessel_spec
from .montecarlo import (
    KS_COEFF_1PCT,
    MIN_KS_COUNT,
    analytic_smallest_cdf,
    ks_compare,
    sample_smallest,
)
from .quadrature import DEFAULT_NODES
from .specfun import require_order

# Pass/fail tolerances for the *-check subcommands.
SECOND_ORDER_WINDOW = (-2.3, -1.7)
FIRST_ORDER_WINDOW = (-1.3, -0.7)
OPTIMAL_RATIO_MAX = 0.1
IDENTITY_TOL_RESOLVENT = 1e-8
IDENTITY_TOL_FD = 1e-5


class _Parser(argparse.ArgumentParser):
    # usage problems exit with 1, not argparse's default 2 (2 means domain error here)
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _emit(args, meta: dict, header: list, rows: list) -> None:
    pairs = " ".join(f"{k}={v}" for k, v in meta.items())
    lines = [f"# hardedge {__version__} {pairs}"]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(cell) for cell in row))
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _meta(command, a="-", n="-", m="-", scaling="-", seed="-") -> dict:
    return {"command": command, "a": a, "n": n, "m": m, "scaling": scaling, "seed": seed}


def _parse_s_values(args) -> list:
    if args.s_grid is not None:
        parts = args.s_grid.split(":")
        if len(parts) != 3:
            raise DomainError(f"--s-grid expects start:stop:step, got {args.s_grid!r}")
        start, stop, step = (float(p) for p in parts)
        if not all(map(math.isfinite, (start, stop, step))) or step <= 0.0 or stop < start:
            raise DomainError(f"--s-grid needs finite start <= stop and step > 0, got {args.s_grid!r}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        values = [start + k * step for k in range(count)]
    else:
        values = [float(tok) for tok in args.s.split(",") if tok]
    if not values or any(not math.isfinite(v) or v <= 0.0 for v in values):
        raise DomainError("s values must be finite and > 0")
    return values


def _parse_orders(text: str) -> tuple:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok)
    except ValueError:
        raise DomainError(f"--n-list expects comma-separated integers, got {text!r}") from None


def _slope_ok(slope: float, window) -> bool:
    return window[0] <= slope <= window[1]


def _cmd_limit_cdf(args):
    a = require_order(args.a)
    s_values = _parse_s_values(args)
    table = limit_table(a, s_values, m=args.m)
    rows = [[row.s, row.F, row.F_err] for row in table.rows]
    _emit(args, _meta("limit-cdf", a=_fmt(a), m=args.m, scaling="limit"),
          ["s", "F", "F_err"], rows)
    return []


def _cmd_finite_cdf(args):
    a = require_order(args.a)
    s_values = _parse_s_values(args)
    table = finite_table(a, args.n, s_values, scaling=args.scaling, m=args.m, c=args.c)
    rows = [[row.s, row.F, row.F_err] for row in table.rows]
    scaling = args.scaling if args.scaling != "custom" else f"custom({_fmt(args.c)})"
    _emit(args, _meta("finite-cdf", a=_fmt(a), n=args.n, m=args.m, scaling=scaling),
          ["s", "F", "F_err"], rows)
    return []


def _cmd_density(args):
    a = require_order(args.a)
    s_values = _parse_s_values(args)
    table = limit_table(a, s_values, m=args.m, density=True, method=args.method)
    label = "pdf" if args.pdf else "f"
    rows = [[row.s, row.F, -row.f if args.pdf else row.f] for row in table.rows]
    _emit(args, _meta("density", a=_fmt(a), m=args.m, scaling="limit"),
          ["s", "F", label], rows)
    return []


def _cmd_expansion_check(args):
    a = require_order(args.a)
    s = float(args.s)
    orders = _parse_orders(args.n_list)
    corrected = rate_report(a, s, orders, lambda n: conjecture_residual(a, n, s, args.m))
    plain = rate_report(a, s, orders, lambda n: uncorrected_difference(a, n, s, args.m))
    rows = [
        [n, corrected.residuals[i], plain.residuals[i],
         corrected.fitted_slope, corrected.slope_stderr, plain.fitted_slope]
        for i, n in enumerate(orders)
    ]
    _emit(args, _meta("expansion-check", a=_fmt(a), n=args.n_list, m=args.m, scaling="standard"),
          ["n", "residual", "residual_uncorrected",
           "slope", "slope_stderr", "slope_uncorrected"], rows)
    failures = []
    if corrected.degenerate:
        return failures  # expansion exact to solver precision (e.g. a = 0)
    if not _slope_ok(corrected.fitted_slope, SECOND_ORDER_WINDOW):
        failures.append(
            f"corrected-residual slope {corrected.fitted_slope:.3f} outside {SECOND_ORDER_WINDOW}"
        )
    if not plain.degenerate and not _slope_ok(plain.fitted_slope, FIRST_ORDER_WINDOW):
        failures.append(
            f"uncorrected-difference slope {plain.fitted_slope:.3f} outside {FIRST_ORDER_WINDOW}"
        )
    return failures


def _cmd_optimal_check(args):
    a = require_order(args.a)
    s = float(args.s)
    orders = _parse_orders(args.n_list)
    tuned = rate_report(a, s, orders, lambda n: optimal_scaling_residual(a, n, s, args.m))
    plain = [uncorrected_difference(a, n, s, args.m) for n in orders]
    ratios = [t / p if p > 0.0 else math.nan for t, p in zip(tuned.residuals, plain)]
    rows = [
        [n, tuned.residuals[i], plain[i], ratios[i], tuned.fitted_slope, tuned.slope_stderr]
        for i, n in enumerate(orders)
    ]
    _emit(args, _meta("optimal-check", a=_fmt(a), n=args.n_list, m=args.m, scaling="optimal"),
          ["n", "residual_optimal", "residual_standard", "ratio", "slope", "slope_stderr"], rows)
    failures = []
    if tuned.degenerate:
        return failures
    if not _slope_ok(tuned.fitted_slope, SECOND_ORDER_WINDOW):
        failures.append(
            f"optimal-scaling slope {tuned.fitted_slope:.3f} outside {SECOND_ORDER_WINDOW}"
        )
    pivot = orders.index(100) if 100 in orders else len(orders) - 1
    if not ratios[pivot] < OPTIMAL_RATIO_MAX:
        failures.append(
            f"optimal/standard residual ratio {ratios[pivot]:.4f} at n={orders[pivot]} "
            f"not below {OPTIMAL_RATIO_MAX}"
        )
    return failures


def _cmd_mehler_heine(args):
    a = require_order(args.a)
    z = float(args.z)
    orders = _parse_orders(args.n_list)
    report = rate_report(a, z, orders, lambda n: mehler_heine_residual(a, n, z))
    rows = [
        [n, report.residuals[i], report.fitted_slope, report.slope_stderr]
        for i, n in enumerate(orders)
    ]
    _emit(args, _meta("mehler-heine", a=_fmt(a), n=args.n_list),
          ["n", "residual", "slope", "slope_stderr"], rows)
    if report.degenerate:
        return []
    if not _slope_ok(report.fitted_slope, SECOND_ORDER_WINDOW):
        return [f"scaled-Laguerre slope {report.fitted_slope:.3f} outside {SECOND_ORDER_WINDOW}"]
    return []


def _cmd_kernel_check(args):
    a = require_order(args.a)
    c = float(args.c)
    orders = _parse_orders(args.n_list)
    grid = make_grid(limit=args.grid_max, count=args.grid_points)
    report = kernel_expansion_rate(a, orders, c, grid)
    rows = [
        [n, report.residuals[i], report.fitted_slope, report.slope_stderr]
        for i, n in enumerate(orders)
    ]
    _emit(args, _meta("kernel-check", a=_fmt(a), n=args.n_list, scaling=f"c={_fmt(c)}"),
          ["n", "max_residual", "slope", "slope_stderr"], rows)
    if report.degenerate:
        return []
    if not _slope_ok(report.fitted_slope, SECOND_ORDER_WINDOW):
        return [f"kernel-residual slope {report.fitted_slope:.3f} outside {SECOND_ORDER_WINDOW}"]
    return []


def _cmd_identity_check(args):
    a = require_order(args.a)
    s = float(args.s)
    spec = bessel_spec(a)
    quad_form = resolvent_quadratic_form(spec, s, args.m)
    lhs = -0.25 * quad_form
    rhs_resolvent = s * log_derivative(spec, s, args.m, method="resolvent")
    rhs_fd = s * log_derivative(spec, s, args.m, method="finite_difference")
    residual_resolvent = abs(lhs - rhs_resolvent)
    residual_fd = abs(lhs - rhs_fd)
    _emit(args, _meta("identity-check", a=_fmt(a), m=args.m),
          ["s", "quadratic_form", "lhs", "rhs_resolvent", "rhs_fd",
           "residual_resolvent", "residual_fd"],
          [[s, quad_form, lhs, rhs_resolvent, rhs_fd, residual_resolvent, residual_fd]])
    failures = []
    if not residual_resolvent <= IDENTITY_TOL_RESOLVENT:
        failures.append(
            f"resolvent-path residual {residual_resolvent:.3e} above {IDENTITY_TOL_RESOLVENT}"
        )
    if not residual_fd <= IDENTITY_TOL_FD:
        failures.append(f"finite-difference residual {residual_fd:.3e} above {IDENTITY_TOL_FD}")
    return failures


def _cmd_mc_validate(args):
    if args.count < MIN_KS_COUNT:
        raise DomainError(f"--count must be >= {MIN_KS_COUNT} for the KS comparison")
    batch = sample_smallest(args.a, args.n, args.count, args.seed)
    statistic, passed = ks_compare(batch, analytic_smallest_cdf(args.a, args.n, m=args.m))
    threshold = KS_COEFF_1PCT / math.sqrt(args.count)
    _emit(args, _meta("mc-validate", a=args.a, n=args.n, m=args.m, seed=args.seed),
          ["count", "ks_statistic", "threshold", "passed"],
          [[args.count, statistic, threshold, passed]])
    if not passed:
        return [f"KS statistic {statistic:.5f} at or above the 1% threshold {threshold:.5f}"]
    return []


def _add_output(sub):
    sub.add_argument("--output", "-o", default=None, help="write CSV here instead of stdout")


def _add_s_flags(sub):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--s", help="endpoint value or comma-separated list")
    group.add_argument("--s-grid", help="endpoint grid start:stop:step (inclusive)")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hardedge",
                     description="Hard-edge smallest-eigenvalue laws via Fredholm determinants")
    parser.add_argument("--version", action="version", version=f"hardedge {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("limit-cdf", help="gap probability of the limit law")
    sub.add_argument("--a", type=float, required=True, help="weight exponent a > -1")
    _add_s_flags(sub)
    sub.add_argument("--m", type=int, default=DEFAULT_NODES, help="quadrature nodes")
    _add_output(sub)
    sub.set_defaults(handler=_cmd_limit_cdf)

    sub = commands.add_parser("finite-cdf", help="gap probability of the order-n law")
    sub.add_argument("--a", type=float, required=True)
    sub.add_argument("--n", type=int, required=True, help="matrix order n >= 1")
    _add_s_flags(sub)
    sub.add_argument("--scaling", choices=SCALINGS, default="standard")
    sub.add_argument("--c", type=float, default=None, help="parameter of the custom scaling")
    sub.add_argument("--m", type=int, default=DEFAULT_NODES)
    _add_output(sub)
    sub.set_defaults(handler=_cmd_finite_cdf)

    sub = commands.add_parser("density", help="limit law with its derivative f = dF/ds")
    sub.add_argument("--a", type=float, required=True)
    _add_s_flags(sub)
    sub.add_argument("--m", type=int, default=DEFAULT_NODES)
    sub.add_argument("--method", choices=("resolvent", "finite_difference"),
                     default="resolvent")
    sub.add_argument("--pdf", action="store_true",
                     help="emit -f, the probability density, instead of f")
    _add_output(sub)
    sub.set_defaults(handler=_cmd_density)

    sub = commands.add_parser("expansion-check",
                              help="second-order decay of the corrected finite-order expansion")
    sub.add_argument("--a", type=float, required=True)
    sub.add_argument("--s", type=float, required=True)
    sub.add_argument("--n-list", default=",".join(map(str, DEFAULT_ORDERS)))
    sub.add_argument("--m", type=int, default=STUDY_NODES)
    _add_output(sub)
    sub.set_defaults(handler=_cmd_expansion_check)

    sub = commands.add_parser("optimal-check",
                              help="second-order decay under the optimally tuned scaling")
    sub.add_argument("--a", type=float, required=True)
    sub.add_argument("--s", type=float, required=True)
    sub.add_argument("--n-list", default=",".join(map(str, DEFAULT_ORDERS)))
    sub.add_argument("--m", type=int, default=STUDY_NODES)
    _add_output(sub)
    sub.set_defaults(handler=_cmd_optimal_check)

    sub = commands.add_parser("mehler-heine",
                              help="second-order decay of the scaled Laguerre expansion")
    sub.add_argument("--a", type=float, required=True)
    sub.add_argument("--z", type=float, required=True, help="argument z in [0, 10]")
    sub.add_argument("--n-list", default=",".join(map(str, DEFAULT_ORDERS)))
    _add_output(sub)
    sub.set_defaults(handler=_cmd_mehler_heine)

    sub = commands.add_parser("kernel-check",
                              help="second-order decay of the pointwise kernel expansion")
    sub.add_argument("--a", type=float, required=True)
    sub.add_argument("--c", type=float, required=True, help="scaling-family parameter")
    sub.add_argument("--n-list", default=",".join(map(str, DEFAULT_ORDERS)))
    sub.add_argument("--grid-max", type=float, default=8.0)
    sub.add_argument("--grid-points", type=int, default=9)
    _add_output(sub)
    sub.set_defaults(handler=_cmd_kernel_check)

    sub = commands.add_parser("identity-check",
                              help="resolvent quadratic form against the log-derivative")
    sub.add_argument("--a", type=float, required=True)
    sub.add_argument("--s", type=float, required=True)
    sub.add_argument("--m", type=int, default=DEFAULT_NODES)
    _add_output(sub)
    sub.set_defaults(handler=_cmd_identity_check)

    sub = commands.add_parser("mc-validate",
                              help="Kolmogorov-Smirnov test of sampled eigenvalues vs the law")
    sub.add_argument("--a", type=int, required=True, help="integer a >= 0")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--count", type=int, default=20000)
    sub.add_argument("--seed", type=int, default=12345)
    sub.add_argument("--m", type=int, default=DEFAULT_NODES)
    _add_output(sub)
    sub.set_defaults(handler=_cmd_mc_validate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        failures = args.handler(args)
    except NumericError as exc:
        print(f"hardedge: numeric error: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"hardedge: domain error: {exc}", file=sys.stderr)
        return 2
    except HardEdgeError as exc:  # AccuracyError and anything else package-level
        print(f"hardedge: {exc}", file=sys.stderr)
        return 2
    if failures:
        for failure in failures:
            print(f"hardedge: check failed: {failure}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
