"""Command-line interface.

Commands: solve, eval, table, verify.  All output is deterministic for a
given input: JSON is emitted with sorted keys and numbers are printed at
17 significant digits in the CSV output.

Exit codes: 0 success, 1 parse/solve/usage error, 2 verification failure
(or non-evaluable solution for eval).
"""

from __future__ import annotations

import json
import os
import sys

import click

from . import besseval as bv
from . import series as fs
from . import solver as sv
from . import transform as tr
from . import problemfile as pf
from .errors import NegativeValuation, OperationalCalcError

ENV_TRUNCATION = "OPCALC_TRUNCATION"


def _default_truncation():
    raw = os.environ.get(ENV_TRUNCATION)
    if raw is None:
        return fs.DEFAULT_TRUNCATION
    try:
        t = int(raw)
        if t < 1:
            raise ValueError
    except ValueError:
        raise click.ClickException(
            f"{ENV_TRUNCATION} must be a positive integer, got {raw!r}")
    return t


def _emit_json(obj):
    click.echo(json.dumps(obj, sort_keys=True, indent=2))


def _fail(code: str, message: str, exit_code: int):
    print(f"error: {message}", file=sys.stderr)
    _emit_json({"ok": False, "error_code": code, "error": message})
    raise SystemExit(exit_code)


def _fmt17(x: float) -> str:
    return f"{x:.17g}"


@click.group()
def main():
    """Operational-calculus solver for Bessel-type equations."""


@main.command("solve")
@click.argument("problem", type=click.Path())
def cmd_solve(problem):
    """Solve a problem file and print the solution report as JSON."""
    try:
        spec, options = pf.load_problem_file(problem)
        truncation = options["truncation"] or _default_truncation()
        report = sv.solve(spec, truncation=truncation,
                          real_form=options["real_form"])
    except OperationalCalcError as exc:
        _fail("solve_error", str(exc), 1)
        return
    doc = report.to_json()
    ok = report.residual_norm <= options["tolerance"]
    doc["ok"] = ok
    doc["tolerance"] = options["tolerance"]
    _emit_json(doc)
    if not ok:
        print(f"error: residual {report.residual_norm:.3e} exceeds "
              f"tolerance {options['tolerance']:.3e}", file=sys.stderr)
        raise SystemExit(2)


def _parse_points(t_opt, range_opt):
    if (t_opt is None) == (range_opt is None):
        raise ValueError("give exactly one of --t or --range")
    if t_opt is not None:
        parts = [p for p in t_opt.split(",") if p.strip()]
        if not parts:
            raise ValueError("empty --t list")
        return [float(p) for p in parts]
    try:
        a, b, n = range_opt.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError:
        raise ValueError("--range must be a:b:n")
    if n < 1:
        raise ValueError("--range needs n >= 1")
    if n == 1:
        return [a]
    return [a + (b - a) * i / (n - 1) for i in range(n)]


@main.command("eval")
@click.argument("problem", type=click.Path())
@click.option("--t", "t_opt", default=None,
              help="Comma-separated sample points.")
@click.option("--range", "range_opt", default=None,
              help="a:b:n equally spaced sample points.")
def cmd_eval(problem, t_opt, range_opt):
    """Solve a problem and emit CSV rows t,value,bound at sample points."""
    try:
        points = _parse_points(t_opt, range_opt)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(1)
    try:
        spec, options = pf.load_problem_file(problem)
        truncation = options["truncation"] or _default_truncation()
        report = sv.solve(spec, truncation=truncation,
                          real_form=options["real_form"])
    except OperationalCalcError as exc:
        _fail("solve_error", str(exc), 1)
        return
    rows = []
    try:
        for t in points:
            res = bv.eval_series(report.series, spec.nu, t)
            value = res.value
            if abs(value.imag) <= 1e-9 * (1 + abs(value)):
                val_str = _fmt17(value.real)
            else:
                val_str = f"{_fmt17(value.real)}{value.imag:+.17g}j"
            rows.append(f"{_fmt17(t)},{val_str},{_fmt17(res.truncation_bound)}")
    except NegativeValuation as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2)
    click.echo("t,value,bound")
    for row in rows:
        click.echo(row)


@main.command("table")
@click.option("--nu", type=float, required=True, help="Basis order nu.")
def cmd_table(nu):
    """Dump the transform table with nu substituted."""
    _emit_json(tr.table_rows(nu))


@main.command("verify")
@click.argument("problem", type=click.Path())
@click.argument("series_file", type=click.Path())
def cmd_verify(problem, series_file):
    """Check a candidate series solution against a problem file."""
    try:
        spec, options = pf.load_problem_file(problem)
        candidate = pf.load_series_file(series_file)
        residual, ic_errors = sv.verify(spec, candidate)
    except (OperationalCalcError, ValueError) as exc:
        _fail("verify_error", str(exc), 1)
        return
    tol = options["tolerance"]
    ok = residual <= tol and all(e <= max(tol, 1e-9) for e in ic_errors)
    _emit_json({
        "ok": ok,
        "residual_norm": residual,
        "ic_errors": list(ic_errors),
        "tolerance": tol,
    })
    if not ok:
        print(f"error: verification failed (residual {residual:.3e})",
              file=sys.stderr)
        raise SystemExit(2)


if __name__ == "__main__":
    main()
