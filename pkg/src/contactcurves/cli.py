"""Command line front end.

Four subcommands cover the workflows the library supports:

* ``analyze``: run the full pipeline (Frenet apparatus, frame scalars,
  classification, equation check, weight solve, independence) on a curve
  file and emit a JSON report.
* ``verify-example``: self-check against the built-in reference curve
  (sin 2t, -cos 2t, 0, 0, 1); prints one PASS/FAIL line per check.
* ``scan``: sweep (c, k1, k2, alpha0) grids per case and emit the required
  weight ratio and feasibility verdicts as CSV.
* ``flow``: discretize a curve, run gradient descent on the weighted
  energy, emit the trajectory as CSV.

Exit codes: 0 success, 1 a verification check failed, 2 invalid input.
Reports go to stdout unless ``--out`` names a file; they contain no
timestamps and all floats are printed with 17 significant digits, so a
rerun with the same arguments is byte-identical.

Curve files are plain text: a header line ``n=<int>``, then one coordinate
expression of t per line (x_1..x_n, y_1..y_n, z).  Blank lines are skipped
and ``#`` starts a comment.
"""

from __future__ import annotations

import argparse
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import analysis, discrete, reporting
from .curves import (
    CurveError,
    CurveSpec,
    arclength_check,
    frame_scalars,
    frenet_apparatus,
    sample_grid,
)

__all__ = [
    "ConfigError",
    "main",
    "example_spec",
    "load_curve_file",
    "parse_range",
]

EXAMPLE_COORDS = ("sin(2*t)", "-cos(2*t)", "0", "0", "1")

GEODESIC_VERDICT = "geodesic: any delta admissible"
THRESHOLD_VERDICT = "geodesic only for delta1/delta2 >= 0"
EXCLUDED_VERDICT = "excluded: requires delta1/delta2 != 0"


class ConfigError(ValueError):
    """Invalid configuration or input file; maps to exit code 2."""


def example_spec():
    """The reference closed Legendre curve in the 5-dimensional model."""
    return CurveSpec(2, list(EXAMPLE_COORDS))


def load_curve_file(path):
    """Parse a curve file into a CurveSpec.

    Format: optional comments/blank lines, a header ``n=<int>``, then
    exactly 2n+1 expression lines in the order x_1..x_n, y_1..y_n, z.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read curve file {path}: {exc}") from exc
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ConfigError(f"curve file {path} has no content")
    header = re.fullmatch(r"n\s*=\s*(\d+)", lines[0])
    if header is None:
        raise ConfigError(
            f"curve file {path}: first line must be 'n=<int>', got {lines[0]!r}"
        )
    n = int(header.group(1))
    if n < 1:
        raise ConfigError(f"curve file {path}: n must be >= 1, got {n}")
    exprs = lines[1:]
    if len(exprs) != 2 * n + 1:
        raise ConfigError(
            f"curve file {path}: expected {2 * n + 1} coordinate lines "
            f"for n={n}, found {len(exprs)}"
        )
    try:
        return CurveSpec(n, exprs)
    except CurveError as exc:
        raise ConfigError(f"curve file {path}: {exc}") from exc


def parse_range(text, name):
    """Parse 'start:stop:count' into a linspace array."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(
            f"{name}: expected start:stop:count, got {text!r}"
        )
    try:
        start = float(parts[0])
        stop = float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"{name}: {exc}") from exc
    if count < 1:
        raise ConfigError(f"{name}: count must be >= 1, got {count}")
    if count == 1 and stop != start:
        raise ConfigError(
            f"{name}: a single-sample range needs start == stop"
        )
    return np.linspace(start, stop, count)


def _write_output(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise ConfigError(f"cannot write {out}: {exc}") from exc


def _validate_common(args):
    if args.grid < 16:
        raise ConfigError(f"--grid must be >= 16, got {args.grid}")
    if not args.tol > 0.0:
        raise ConfigError(f"--tol must be positive, got {args.tol}")


def _load_spec(args):
    if args.curve is None:
        return example_spec(), "<built-in example>"
    return load_curve_file(args.curve), args.curve


# ---------------------------------------------------------------------------
# analyze


def _spread(row):
    return float(np.max(row) - np.min(row))


def cmd_analyze(args):
    _validate_common(args)
    spec, label = _load_spec(args)
    ts = sample_grid(spec, args.grid)
    delta = (args.delta1, args.delta2)

    check = arclength_check(spec, ts)
    defect = float(np.max(np.abs(check.defects)))
    if defect > args.tol:
        raise ConfigError(
            f"curve is not Legendre: max |eta(T)| = {defect:.6e} "
            f"exceeds tolerance {args.tol:g}"
        )
    if check.max_deviation > args.tol:
        raise ConfigError(
            f"curve is not unit speed: max speed deviation = "
            f"{check.max_deviation:.6e} exceeds tolerance {args.tol:g}"
        )

    frenet = frenet_apparatus(
        spec, ts, tol=args.tol, unit_tol=10.0 * args.tol
    )
    scalars = frame_scalars(frenet)
    cls = analysis.classify(frenet, scalars, args.c, tol=args.tol)
    res = analysis.residual_direct(spec, ts, args.c, delta)
    thm = analysis.theorem31_check(frenet, scalars, args.c, delta, tol=args.tol)
    sol = analysis.solve_delta(frenet, scalars, args.c, tol=args.tol)

    if sol.any_delta:
        verdict = "any delta admissible"
    elif sol.rho is None:
        verdict = "no constant weight ratio fits this curve"
    elif sol.feasible:
        verdict = "critical for delta proportional to (rho, 1)"
    else:
        verdict = "required ratio violates the case constraints"

    if frenet.r in (2, 3):
        ind = analysis.independence_check(spec, frenet)
        independence = {
            "applicable": True,
            "independent": ind.independent,
            "min_singular_value": ind.min_singular_value,
            "set_size": ind.set_size,
            "implied_n_bound": ind.implied_n_bound,
            "note": ind.note,
        }
    else:
        independence = {
            "applicable": False,
            "note": f"defined for osculating order 2 or 3, curve has r={frenet.r}",
        }

    payload = {
        "command": "analyze",
        "curve": label,
        "config": {
            "c": float(args.c),
            "delta1": float(args.delta1),
            "delta2": float(args.delta2),
            "grid": int(args.grid),
            "tol": float(args.tol),
        },
        "class": cls.klass,
        "case": cls.case,
        "rho": sol.rho,
        "max_residual": res.max_norm,
        "equations": res.equations,
        "frenet": {
            "n": frenet.n,
            "r": frenet.r,
            "m": frenet.m,
            "curvature_mean": [float(np.mean(k)) for k in frenet.curvatures],
            "curvature_spread": [_spread(k) for k in frenet.curvatures],
            "unit_speed_deviation": float(check.max_deviation),
            "max_legendre_defect": defect,
        },
        "scalars": {
            "f_mean": float(np.mean(scalars.f)),
            "f_spread": _spread(scalars.f),
            "g_phiT_E3_max": float(np.max(np.abs(scalars.g_phiT_E3))),
            "g_phiT_E4_max": float(np.max(np.abs(scalars.g_phiT_E4))),
            "eta_E2_max": float(np.max(np.abs(scalars.eta_E2))),
            "eta_E3_max": float(np.max(np.abs(scalars.eta_E3))),
            "eta_E4_max": float(np.max(np.abs(scalars.eta_E4))),
            "offspan_max": float(np.max(scalars.offspan)),
        },
        "classification": {
            "class": cls.klass,
            "case": cls.case,
            "alpha0": cls.alpha0,
            "w0": cls.w0,
            "w0_variance": cls.w0_variance,
            "f_mean": cls.f_mean,
            "diagnostics": list(cls.diagnostics),
        },
        "theorem": {
            "passed": thm.passed,
            "condition1_mode": thm.condition1_mode,
            "condition1_leakage": thm.condition1_leakage,
            "equations": [
                {
                    "index": eq.index,
                    "max_residual": eq.max_residual,
                    "passed": eq.passed,
                }
                for eq in thm.equations
            ],
        },
        "solve": {
            "case": sol.case,
            "class": sol.klass,
            "rho": sol.rho,
            "rho_spread": sol.rho_spread,
            "parallel_defect": sol.parallel_defect,
            "feasible": sol.feasible,
            "any_delta": sol.any_delta,
            "k2_deviation": sol.k2_deviation,
            "alpha0": sol.alpha0,
            "delta": list(sol.delta) if sol.delta is not None else None,
            "verdict": verdict,
            "notes": list(sol.notes),
        },
        "independence": independence,
    }
    _write_output(reporting.to_json(payload), args.out)
    return 0


# ---------------------------------------------------------------------------
# verify-example


def cmd_verify_example(args):
    _validate_common(args)
    spec = example_spec()
    ts = sample_grid(spec, args.grid)
    sign = "+" if args.eq2_sign == "plus" else "-"

    frenet = frenet_apparatus(spec, ts, tol=args.tol)
    scalars = frame_scalars(frenet)
    cls = analysis.classify(frenet, scalars, args.c, tol=args.tol)
    sol = analysis.solve_delta(frenet, scalars, args.c, tol=args.tol)
    thm = analysis.theorem31_check(frenet, scalars, args.c, (-8.0, 2.0),
                                   tol=args.tol, eq2_sign=sign)
    res_crit = analysis.residual_direct(spec, ts, args.c, (-8.0, 2.0))
    res_biha = analysis.residual_direct(spec, ts, args.c, (0.0, 1.0))
    closed = analysis.residual_closed_form(frenet, scalars, args.c,
                                           (-8.0, 2.0), eq2_sign=sign)
    route_gap = float(np.max(np.abs(closed.vector - res_crit.vector)))

    k1_err = float(np.max(np.abs(frenet.curvatures[0] - 2.0)))
    f_max = float(np.max(np.abs(scalars.f)))
    checks = [
        ("osculating order r == 2",
         frenet.r == 2, f"r = {frenet.r}"),
        ("k1 == 2 within 1e-9",
         k1_err < 1e-9, f"max deviation {reporting.format_float(k1_err)}"),
        ("phi T orthogonal to E2 within 1e-9",
         f_max < 1e-9, f"max |f| = {reporting.format_float(f_max)}"),
        ("classified as circle, case II",
         cls.klass == "circle" and cls.case == "II",
         f"class={cls.klass} case={cls.case}"),
        ("residual vanishes at delta=(-8, 2) within 1e-8",
         res_crit.max_norm < 1e-8,
         f"max norm {reporting.format_float(res_crit.max_norm)}"),
        ("equation check passes at delta=(-8, 2)",
         thm.passed, f"mode {thm.condition1_mode}"),
        ("not biharmonic: residual norm at delta=(0, 1) is 8 within 1e-6",
         abs(res_biha.max_norm - 8.0) < 1e-6,
         f"norm {reporting.format_float(res_biha.max_norm)}"),
        ("weight solve recovers the critical ratio",
         sol.rho is not None and abs(sol.rho + 4.0) < 1e-6 and sol.feasible,
         f"rho = {'none' if sol.rho is None else reporting.format_float(sol.rho)}"),
        (f"closed form (eq2 sign {args.eq2_sign}) matches the direct route within 1e-6",
         route_gap < 1e-6, f"max gap {reporting.format_float(route_gap)}"),
    ]

    lines = []
    failed = 0
    for name, ok, detail in checks:
        if not ok:
            failed += 1
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    if sign == "-" and (args.c + 3.0) / 4.0 == 0.0:
        lines.append(
            "note: the eq2 sign variant is untestable at c=-3; "
            "the (c+3)/4 k1 term vanishes identically"
        )
    if failed:
        lines.append(f"verify-example: FAIL ({failed} of {len(checks)} checks failed)")
    else:
        lines.append(f"verify-example: PASS ({len(checks)} checks)")
    _write_output("\n".join(lines) + "\n", args.out)
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# scan


def _scan_cell(case, c, k1, k2, alpha0):
    """One scan row: required ratio and feasibility for a parameter cell.

    Returns (case, c, k1, k2, alpha0, rho, constraint, feasible, verdict).
    The constraint column carries the quantity whose sign the case
    restricts: rho itself for case I, 3(c-1) sin(2 alpha0) for case IV.
    """
    if k1 == 0.0:
        # no first curvature means no Frenet frame past T: a geodesic
        return (case, c, k1, k2, None, None, None, True, GEODESIC_VERDICT)

    threshold = (
        case in ("II", "IV") and c <= -3.0
    ) or (case == "III" and c < 1.0)
    verdict = THRESHOLD_VERDICT if threshold else ""

    if case == "I":
        rho = 1.0 - (k1 ** 2 + k2 ** 2)
        feasible = abs(rho) > 1e-12
        if not feasible:
            verdict = EXCLUDED_VERDICT
        return (case, c, k1, k2, None, rho, rho, feasible, verdict)
    if case == "II":
        rho = (c + 3.0) / 4.0 - (k1 ** 2 + k2 ** 2)
        return (case, c, k1, k2, None, rho, None, True, verdict)
    if case == "III":
        rho = c - 1.0 - k1 ** 2
        return (case, c, k1, 1.0, None, rho, None, True, verdict)
    # case IV
    constraint = 3.0 * (c - 1.0) * np.sin(2.0 * alpha0)
    rho = (
        (c + 3.0) / 4.0
        + 3.0 * (c - 1.0) / 4.0 * np.cos(alpha0) ** 2
        - (k1 ** 2 + k2 ** 2)
    )
    feasible = constraint < 0.0
    return (case, c, float(k1), float(k2), float(alpha0),
            float(rho), float(constraint), bool(feasible), verdict)


def cmd_scan(args):
    if not args.tol > 0.0:
        raise ConfigError(f"--tol must be positive, got {args.tol}")
    cs = parse_range(args.c_range, "--c-range")
    k1s = parse_range(args.k1_range, "--k1-range")
    k2s = parse_range(args.k2_range, "--k2-range")
    alphas = parse_range(args.alpha0_range, "--alpha0-range")
    if np.any(k1s < 0.0) or np.any(k2s < 0.0):
        raise ConfigError("curvature ranges must be nonnegative")

    case = args.case
    if case == "I":
        cs = np.array([1.0])      # this case is the c=1 space form
    if case == "III":
        k2s = np.array([1.0])     # forced by the case equations
    if case != "IV":
        alphas = np.array([0.0])

    cells = [
        (case, float(c), float(k1), float(k2), float(a))
        for c in cs for k1 in k1s for k2 in k2s for a in alphas
    ]
    with ThreadPoolExecutor(max_workers=4) as pool:
        rows = list(pool.map(lambda cell: _scan_cell(*cell), cells))

    header = ["case", "c", "k1", "k2", "alpha0", "rho",
              "constraint", "feasible", "verdict"]
    _write_output(reporting.to_csv(header, rows), args.out)
    return 0


# ---------------------------------------------------------------------------
# flow


def cmd_flow(args):
    _validate_common(args)
    if args.steps < 0:
        raise ConfigError(f"--steps must be >= 0, got {args.steps}")
    if not args.rate > 0.0:
        raise ConfigError(f"--rate must be positive, got {args.rate}")
    spec, _ = _load_spec(args)
    curve = discrete.DiscreteCurve.from_spec(spec, args.grid)
    curve.validate(tol=max(args.tol, 1e-3))
    result = discrete.descend(
        curve, (args.delta1, args.delta2),
        steps=args.steps, rate=args.rate, c=args.c,
    )
    header = ["step", "energy", "max_defect", "analyzer_residual"]
    rows = [
        (row.step, row.energy, row.max_defect, row.analyzer_residual)
        for row in result.rows
    ]
    text = reporting.to_csv(header, rows)
    if result.stopped and result.diagnostic:
        text += f"# stopped: {result.diagnostic}\n"
    _write_output(text, args.out)
    return 0


# ---------------------------------------------------------------------------
# dispatch


def _add_common(sub, curve=True):
    if curve:
        sub.add_argument("--curve", default=None,
                         help="curve file (default: built-in example)")
    sub.add_argument("--c", type=float, default=-3.0,
                     help="phi-sectional curvature of the model (default -3)")
    sub.add_argument("--delta1", type=float, default=0.0,
                     help="weight on the length term (default 0)")
    sub.add_argument("--delta2", type=float, default=1.0,
                     help="weight on the bending term (default 1)")
    sub.add_argument("--grid", type=int, default=256,
                     help="number of parameter samples (default 256, min 16)")
    sub.add_argument("--tol", type=float, default=1e-6,
                     help="tolerance for rank/constancy decisions (default 1e-6)")
    sub.add_argument("--out", default=None,
                     help="output file (default: stdout)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="contactcurves",
        description="Legendre curve analysis in Sasakian space forms",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("analyze", help="full pipeline on a curve, JSON report")
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = subs.add_parser("verify-example",
                        help="self-check on the built-in reference curve")
    _add_common(p, curve=False)
    p.add_argument("--eq2-sign", choices=("plus", "minus"), default="plus",
                   help="sign variant of the restoring term in equation 2")
    p.set_defaults(func=cmd_verify_example)

    p = subs.add_parser("scan", help="feasibility sweep over case parameters")
    p.add_argument("--case", choices=("I", "II", "III", "IV"), required=True)
    p.add_argument("--c-range", default="-3:-3:1", metavar="START:STOP:COUNT")
    p.add_argument("--k1-range", default="1:1:1", metavar="START:STOP:COUNT")
    p.add_argument("--k2-range", default="0:0:1", metavar="START:STOP:COUNT")
    p.add_argument("--alpha0-range", default="0:0:1",
                   metavar="START:STOP:COUNT")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_scan)

    p = subs.add_parser("flow", help="gradient descent on the weighted energy")
    _add_common(p)
    p.add_argument("--steps", type=int, default=25)
    p.add_argument("--rate", type=float, default=0.05)
    p.set_defaults(func=cmd_flow)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CurveError, discrete.DiscreteCurveError, discrete.VariationError,
            analysis.AnalysisError, reporting.ReportError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
