"""Command-line front end: ``lwgauge {sample,sweep,fit,project-grid,verify}``."""
from __future__ import annotations

import argparse
import csv
import sys
import warnings
from pathlib import Path

import numpy as np

from . import acceptance
from .asymptotics import (CSV_COLUMNS, MIN_POINTS, fit_power_law, richardson_coefficient,
                          sweep, verdict_from_columns, write_sweep_csv)
from .config import load_config
from .coulomb import evaluate
from .errors import (BoundaryLeakage, LWGaugeError, MissingColumn, NumericalError, TooFewRows,
                     ValidationError)
from .grid import divergence, proper_projection, read_field, write_field

EXIT_OK, EXIT_FAILED, EXIT_VALIDATION, EXIT_IO, EXIT_NUMERICAL = 0, 1, 2, 3, 4


def _fmt(x) -> str:
    if np.ndim(x) == 0:
        return f"{float(x):.15g}"
    return "(" + ", ".join(f"{float(v):.15g}" for v in np.ravel(x)) + ")"


def _vector(text: str):
    vals = [float(v) for v in text.split(",")]
    if len(vals) != 3:
        raise argparse.ArgumentTypeError("expected x,y,z")
    return np.array(vals)


# ----------------------------------------------------------------------- commands
def cmd_sample(args) -> int:
    cfg = load_config(args.config)
    traj = cfg.make_trajectory()
    t = cfg.sample.t if args.t is None else args.t
    r = np.asarray(cfg.sample.r if args.r is None else args.r, dtype=float)
    s = evaluate(traj, t, r, cfg.q, n_convention=cfg.n_convention)
    for name in ("t", "r", "t_ret", "phi_L", "phi_C", "a_L", "a_C", "a_simplified", "delta_A",
                 "tail", "tail_error"):
        print(f"{name} = {_fmt(getattr(s, name))}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    traj = cfg.make_trajectory()
    out = args.out or cfg.output_path
    if out is None:
        raise ValidationError("no output path: pass --out or set output.path")
    sw = sweep(traj, cfg.sweep.t_ret, cfg.sweep.direction, cfg.sweep_r0(traj), cfg.sweep.growth,
               cfg.sweep.count, cfg.q, n_convention=cfg.n_convention)
    with open(out, "w", newline="") as fh:
        write_sweep_csv(sw, fh)
    print(f"wrote {len(sw.radii)} rows to {out} (max t_ret closure error {sw.closure_errors.max():.2e})")
    return EXIT_OK


def read_sweep_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise TooFewRows(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    data = {}
    for j, name in enumerate(header):
        try:
            data[name] = np.array([float(row[j]) for row in rows[1:]])
        except (ValueError, IndexError) as exc:
            raise ValidationError(f"{path}: column {name!r}: {exc}") from None
    return data


def fit_columns(data, columns):
    """Per-column power-law fit plus a Richardson coefficient at the rounded exponent."""
    if "r" not in data:
        raise MissingColumn("sweep CSV has no 'r' column")
    missing = [c for c in columns if c not in data]
    if missing:
        raise MissingColumn(f"missing column(s): {', '.join(missing)}")
    radii = data["r"]
    if radii.size < MIN_POINTS:
        raise TooFewRows(f"need at least {MIN_POINTS} rows, got {radii.size}")
    results = []
    for name in columns:
        vals = data[name]
        if np.all(vals == 0.0):
            results.append((name, None, None, "identically zero"))
            continue
        try:
            fit = fit_power_law(vals, radii)
        except NumericalError as exc:
            results.append((name, None, None, str(exc)))
            continue
        try:
            rc = richardson_coefficient(vals, radii, round(fit.exponent))
        except (NumericalError, ValidationError) as exc:
            rc = None
            note = f"richardson: {exc}"
        else:
            note = ""
        results.append((name, fit, rc, note))
    return results


def cmd_fit(args) -> int:
    data = read_sweep_csv(args.csv)
    default = [c for c in CSV_COLUMNS[1:] if c.startswith(("AC", "dA"))]
    columns = args.columns.split(",") if args.columns else default
    results = fit_columns(data, columns)
    table = [["column", "exponent", "fit_coefficient", "richardson_coefficient", "r_min", "r_max",
              "residual_rms", "note"]]
    for name, fit, rc, note in results:
        if fit is None:
            print(f"{name}: skipped ({note})")
            table.append([name, "", "", "", "", "", "", note])
            continue
        rtxt = "n/a" if rc is None else f"{rc:+.10g}"
        print(f"{name}: exponent {fit.exponent:+.4f}  coefficient {fit.coefficient:+.6g}  "
              f"richardson {rtxt}  window [{fit.r_window[0]:.4g}, {fit.r_window[1]:.4g}]  "
              f"rms {fit.residual_rms:.2e} {note}".rstrip())
        table.append([name, repr(fit.exponent), repr(fit.coefficient), "" if rc is None else repr(rc),
                      repr(fit.r_window[0]), repr(fit.r_window[1]), repr(fit.residual_rms), note])
    pairs = [c for c in "xyz" if f"AC{c}" in data and f"dA{c}" in data]
    if pairs and "r" in data:
        report = verdict_from_columns(data["r"], np.column_stack([data[f"AC{c}"] for c in pairs]),
                                      np.column_stack([data[f"dA{c}"] for c in pairs]), pairs)
        for line in report.lines():
            print("verdict " + line)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(table)
    return EXIT_OK


def cmd_project_grid(args) -> int:
    cfg = load_config(args.config)
    field = read_field(args.field)
    if cfg.grid.dims is not None and tuple(cfg.grid.dims) != field.shape:
        raise ValidationError(f"grid dims {field.shape} differ from grid.dims {tuple(cfg.grid.dims)}")
    if cfg.grid.spacing is not None and not np.allclose(cfg.grid.spacing, field.spacing):
        raise ValidationError(f"grid spacing {field.spacing} differs from grid.spacing {cfg.grid.spacing}")
    out = args.out or cfg.output_path
    if out is None:
        raise ValidationError("no output path: pass --out or set output.path")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", BoundaryLeakage)
        proj = proper_projection(field)
    for w in caught:
        print(f"warning: {w.category.__name__}: {w.message}", file=sys.stderr)
    write_field(proj, out)
    d_in = float(np.linalg.norm(divergence(field)))
    d_out = float(np.linalg.norm(divergence(proj)))
    peak_in = float(np.max(np.abs(field.values)))
    peak_out = float(np.max(np.abs(proj.values)))
    print(f"||div V||_2 = {d_in:.6e}")
    print(f"||div P[V]||_2 = {d_out:.6e}")
    print(f"reduction factor = {d_in / d_out if d_out > 0 else float('inf'):.4g}")
    print(f"max|P[V]| / max|V| = {peak_out / peak_in if peak_in > 0 else 0.0:.6g}")
    print(f"max|P[V] - V| / max|V| = "
          f"{float(np.max(np.abs(proj.values - field.values))) / peak_in if peak_in > 0 else 0.0:.6g}")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    load_config(args.config)
    if args.list:
        for c in acceptance.CHECKS:
            print(f"{c.key}  {c.title}  (budget {c.budget:g} s)")
        return EXIT_OK
    keys = set(args.only.split(",")) if args.only else None
    first_failure = None
    for check in acceptance.CHECKS:
        if keys is not None and check.key not in keys:
            continue
        res = acceptance.run_check(check)
        for line in res.lines():
            print(line, flush=True)
        if not res.passed and first_failure is None:
            first_failure = res.key
    if first_failure:
        print(f"FAILED: first failure {first_failure}")
        return EXIT_FAILED
    print("all checks passed")
    return EXIT_OK


# ----------------------------------------------------------------------- parser
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lwgauge", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--config", required=True, help="key = value run configuration")
        sp.set_defaults(func=func)
        return sp

    sp = add("sample", cmd_sample, "evaluate all potentials at one event")
    sp.add_argument("--t", type=float, help="observation time (overrides sample.t)")
    sp.add_argument("--r", type=_vector, help="observer position x,y,z (overrides sample.r)")

    sp = add("sweep", cmd_sweep, "null-ray sweep to CSV")
    sp.add_argument("--out", help="CSV path (overrides output.path)")

    sp = add("fit", cmd_fit, "power-law fits and verdicts for a sweep CSV")
    sp.add_argument("csv", help="sweep CSV")
    sp.add_argument("--columns", help="comma-separated column names")
    sp.add_argument("--out", help="write the fit table as CSV")

    sp = add("project-grid", cmd_project_grid, "transverse projection of a gridded field")
    sp.add_argument("field", help="field CSV (with .hdr sidecar)")
    sp.add_argument("--out", help="output field CSV (overrides output.path)")

    sp = add("verify", cmd_verify, "run the acceptance checks")
    sp.add_argument("--list", action="store_true", help="list checks and exit")
    sp.add_argument("--only", help="comma-separated check keys")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NumericalError, LWGaugeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
