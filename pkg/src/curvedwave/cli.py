"""``curvedwave`` command line.

Every command writes one table, either as CSV (single header row, LF line
endings) or as JSON of the form ``{"meta": ..., "data": ...}``.  Only
``meta`` carries a timestamp, so the ``data`` payload of two identical runs
is byte-identical.  Floats are written with ``repr``, the shortest string
that round-trips.
"""
from __future__ import annotations

import argparse
import csv
import datetime
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .euclid_limit import InvalidSpecError, LimitSequenceSpec, convergence_report, limit_curvature
from .hyperbolic import HyperbolicRadialSpec, hyperbolic_radial
from .quadrature import normalized_defects, orthogonality_matrix
from .radial_polynomials import eval_q, unified_q
from .spectrum import enumerate_levels, level_rows, levels_to_csv
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

DEFAULT_POLY_N = (4, 5, 12, 13)
DEFAULT_POLY_L = (0, 1, 2, 3, 4, 5, 6, 8)
CURVE_POINTS = 401
LIMIT_N = (20, 24, 32, 40)
PROFILE_POINTS = 201


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple:
    try:
        values = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or min(values) < 0:
        raise argparse.ArgumentTypeError("expected non-negative integers")
    return values


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _rows_of(header, dicts):
    return [[d[h] for h in header] for d in dicts]


# each command returns (csv_text, json_data)

def cmd_spectrum(N_max: int, kappa: float):
    if not kappa > 0:
        raise UsageError("spectrum needs kappa > 0")
    if N_max < 0:
        raise UsageError("--N-max must be non-negative")
    levels = enumerate_levels(N_max, kappa)
    return levels_to_csv(levels), level_rows(levels)


def polynomial_records(n_list, L_list, points: int = CURVE_POINTS) -> list[dict]:
    """Exact coefficients of Q_{n,L} and the curve Q_{n,L}(cos r) on [0, pi] at kappa = 1."""
    r = np.linspace(0.0, math.pi, points)
    xi = np.cos(r)
    records = []
    for n in n_list:
        for L in L_list:
            poly = unified_q(n, L)
            records.append({
                "n": n,
                "L": L,
                "coeffs": poly.to_json()["coeffs"],
                "r": [float(v) for v in r],
                "value": [float(v) for v in eval_q(poly, xi)],
            })
    return records


def cmd_polynomials(n_list, L_list):
    records = polynomial_records(n_list, L_list)
    rows = [(rec["n"], rec["L"], r, v) for rec in records for r, v in zip(rec["r"], rec["value"])]
    return _csv_text(["n", "L", "r", "value"], rows), records


def cmd_limit(L: int, k: float, n_list, r_max: float | None):
    if r_max is None:
        # stay inside the smallest upper hemisphere of the sequence
        members = [n for n in n_list if math.isfinite(limit_curvature(n, L, k))] or [1]
        r_max = 0.9 * min(0.5 * math.pi / math.sqrt(limit_curvature(n, L, k)) for n in members)
    try:
        spec = LimitSequenceSpec(L, k, n_list, r_max)
    except InvalidSpecError as exc:
        raise UsageError(str(exc)) from exc
    report = convergence_report(spec)
    r = [float(v) for v in report.r]
    data = {
        "L": L,
        "k": float(k),
        "r_max": float(r_max),
        "r": r,
        "reference": [float(v) for v in report.reference],
        "curves": [{"n": n, "kappa_n": limit_curvature(n, L, k), "value": [float(v) for v in report.curves[n]]}
                   for n in spec.n_values],
        "distances": [{"n": n, "sup_distance": d} for n, d in report.rows],
    }
    rows = [("reference", "", x, float(v)) for x, v in zip(r, report.reference)]
    for n in spec.n_values:
        rows += [("profile", n, x, float(v)) for x, v in zip(r, report.curves[n])]
    rows += [("sup_distance", n, "", d) for n, d in report.rows]
    return _csv_text(["quantity", "n", "r", "value"], rows), data


def cmd_orthogonality(L_list, n_list, kappa: float):
    if not kappa > 0:
        raise UsageError("orthogonality needs kappa > 0")
    records = []
    for L in L_list:
        gram = orthogonality_matrix(L, n_list, kappa)
        defects = normalized_defects(gram)
        for i, ni in enumerate(n_list):
            for j, nj in enumerate(n_list):
                records.append({"L": L, "n_i": ni, "n_j": nj, "gram_value": float(gram[i, j]),
                                "normalized_defect": float(defects[i, j])})
    header = ["L", "n_i", "n_j", "gram_value", "normalized_defect"]
    return _csv_text(header, _rows_of(header, records)), records


def cmd_hyperbolic(L_list, kappa: float, k: float, rho_max: float):
    """Profiles R(rho) for E^2 = k^2 on [0, rho_max]."""
    if not kappa < 0:
        raise UsageError("hyperbolic needs kappa < 0")
    if not (k > 0 and rho_max > 0):
        raise UsageError("--k and --r-max must be positive")
    rhos = [float(v) for v in np.linspace(0.0, rho_max, PROFILE_POINTS)]
    records = []
    for L in L_list:
        spec = HyperbolicRadialSpec(L, kappa, k * k)
        values = hyperbolic_radial(spec, np.array(rhos))
        records.append({"L": L, "kappa_tilde_abs": spec.kappa_tilde_abs, "rho": rhos,
                        "value": [float(v) for v in values]})
    rows = [(rec["L"], x, v) for rec in records for x, v in zip(rec["rho"], rec["value"])]
    return _csv_text(["L", "rho", "value"], rows), records


def cmd_verify(suite: str, tol: float | None):
    checks = run_suite(suite, tol)
    records = [c.to_dict() for c in checks]
    header = ["suite", "name", "achieved", "required", "passed"]
    return _csv_text(header, _rows_of(header, records)), records, all(c.passed for c in checks)


def _add_output_options(p, default_format="csv"):
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=default_format)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvedwave", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="sphere energy levels and degeneracies")
    _add_output_options(p)
    p.add_argument("--N-max", dest="N_max", type=int, default=4)
    p.add_argument("--kappa", type=float, default=1.0)

    p = sub.add_parser("polynomials", help="Q_{n,L} coefficients and curves")
    _add_output_options(p)
    p.add_argument("--n", type=_int_list, default=DEFAULT_POLY_N)
    p.add_argument("--L", type=_int_list, default=DEFAULT_POLY_L)

    p = sub.add_parser("limit", help="contraction of sphere profiles to j_L(kr)")
    _add_output_options(p)
    p.add_argument("--L", type=int, default=0)
    p.add_argument("--k", type=float, default=10.0)
    p.add_argument("--n", type=_int_list, default=LIMIT_N)
    p.add_argument("--r-max", dest="r_max", type=float)

    p = sub.add_parser("orthogonality", help="Gram matrices of sphere profiles")
    _add_output_options(p)
    p.add_argument("--L", type=_int_list, default=(0, 1, 3, 8))
    p.add_argument("--n", type=_int_list, default=tuple(range(14)))
    p.add_argument("--kappa", type=float, default=1.0)

    p = sub.add_parser("hyperbolic", help="hyperbolic radial profiles R(rho)")
    _add_output_options(p)
    p.add_argument("--L", type=_int_list, default=(0,))
    p.add_argument("--kappa", type=float, default=-1.0)
    p.add_argument("--k", type=float, default=1.0, help="wave number, E^2 = k^2")
    p.add_argument("--r-max", dest="r_max", type=float, default=10.0, help="largest rho")

    p = sub.add_parser("verify", help="run invariant suites")
    _add_output_options(p, "json")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--tol", type=float, help="override the main tolerance of each suite")
    return parser


def _config(args) -> dict:
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in ("out", "format"):
            continue
        out[key] = list(value) if isinstance(value, tuple) else value
    return out


def render(args, csv_text: str, data) -> str:
    if args.format == "csv":
        return csv_text
    meta = {
        "command": args.command,
        "config": _config(args),
        "version": __version__,
        "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    return json.dumps({"meta": meta, "data": data}, indent=1) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    status = EXIT_OK
    try:
        if args.command == "spectrum":
            csv_text, data = cmd_spectrum(args.N_max, args.kappa)
        elif args.command == "polynomials":
            csv_text, data = cmd_polynomials(args.n, args.L)
        elif args.command == "limit":
            csv_text, data = cmd_limit(args.L, args.k, args.n, args.r_max)
        elif args.command == "orthogonality":
            csv_text, data = cmd_orthogonality(args.L, args.n, args.kappa)
        elif args.command == "hyperbolic":
            csv_text, data = cmd_hyperbolic(args.L, args.kappa, args.k, args.r_max)
        else:
            csv_text, data, passed = cmd_verify(args.suite, args.tol)
            status = EXIT_OK if passed else EXIT_FAILED
    except UsageError as exc:
        print(f"curvedwave {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(args, csv_text, data)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # the reader went away (e.g. piped into head); not an error of ours
            sys.stderr.close()
    return status


if __name__ == "__main__":
    sys.exit(main())
