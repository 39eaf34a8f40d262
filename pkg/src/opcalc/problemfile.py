"""Problem-file parsing and validation.

A problem is a JSON document:

    {
      "nu": 0,
      "operator": [q0, ..., qK],
      "rhs": {series object} or null,
      "initial_conditions": [a0, ..., a_{K-1}],
      "truncation": 64,          // optional
      "tolerance": 1e-8,         // optional
      "real_form": false         // optional
    }

Scalars are numbers, [re, im] pairs, "num/den" strings, or
["num/den", "num/den"] pairs; exact and floating kinds must not be
mixed within one file.
"""

from __future__ import annotations

import json

from . import coefficients as co
from . import series as fs
from . import transform as tr
from .errors import ProblemFormatError


def _parse_scalar(entry, where):
    try:
        return co.coeff_from_json(entry)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ProblemFormatError(f"{where}: {exc}") from exc


def load_series(doc) -> fs.FormalSeries:
    if not isinstance(doc, dict):
        raise ProblemFormatError("series must be a JSON object")
    for key in ("valuation", "coefficients", "truncation"):
        if key not in doc:
            raise ProblemFormatError(f"series is missing '{key}'")
    try:
        return fs.from_json(doc)
    except (TypeError, ValueError) as exc:
        raise ProblemFormatError(f"bad series: {exc}") from exc


def load_problem(doc):
    """Validate a problem document; returns (EquationSpec, options)."""
    if not isinstance(doc, dict):
        raise ProblemFormatError("problem must be a JSON object")
    for key in ("nu", "operator", "initial_conditions"):
        if key not in doc:
            raise ProblemFormatError(f"problem is missing '{key}'")
    nu = doc["nu"]
    if not isinstance(nu, (int, float)) or isinstance(nu, bool):
        raise ProblemFormatError("'nu' must be a number")
    operator = doc["operator"]
    ics = doc["initial_conditions"]
    if not isinstance(operator, list) or not operator:
        raise ProblemFormatError("'operator' must be a nonempty list")
    if not isinstance(ics, list):
        raise ProblemFormatError("'initial_conditions' must be a list")
    if len(ics) != len(operator) - 1:
        raise ProblemFormatError(
            f"expected {len(operator) - 1} initial conditions for a "
            f"degree-{len(operator) - 1} operator, got {len(ics)}")
    q = [_parse_scalar(x, f"operator[{i}]") for i, x in enumerate(operator)]
    a = [_parse_scalar(x, f"initial_conditions[{i}]")
         for i, x in enumerate(ics)]
    rhs = None
    if doc.get("rhs") is not None:
        rhs = load_series(doc["rhs"])
        if rhs.nu != float(nu):
            raise ProblemFormatError("rhs series 'nu' differs from problem 'nu'")
    kinds = {co.is_exact(c) for c in q + a}
    if rhs is not None and not rhs.is_zero:
        kinds.add(rhs.exact)
    if len(kinds) > 1:
        raise ProblemFormatError("mixed exact and floating coefficients")
    options = {
        "truncation": doc.get("truncation"),
        "tolerance": doc.get("tolerance", 1e-8),
        "real_form": bool(doc.get("real_form", False)),
    }
    if options["truncation"] is not None and (
            not isinstance(options["truncation"], int)
            or isinstance(options["truncation"], bool)
            or options["truncation"] < 1):
        raise ProblemFormatError("'truncation' must be a positive integer")
    if not isinstance(options["tolerance"], (int, float)):
        raise ProblemFormatError("'tolerance' must be a number")
    try:
        spec = tr.EquationSpec(float(nu), tuple(q), rhs, tuple(a))
    except ValueError as exc:
        raise ProblemFormatError(str(exc)) from exc
    return spec, options


def load_problem_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ProblemFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"{path} is not valid JSON: {exc}") from exc
    return load_problem(doc)


def load_series_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ProblemFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"{path} is not valid JSON: {exc}") from exc
    return load_series(doc)
