"""End-to-end orchestration: transform, decompose, invert, verify.

Verification is purely algebraic: the operator polynomial is applied to
the candidate series through powers of the modified left shift and the
result compared against the right-hand side coefficientwise.  The
floating differential cross-check lives with the basis realization, not
here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from . import coefficients as co
from . import series as fs
from . import ratfun as rf
from . import transform as tr
from .errors import NonHomogeneous

DEFAULT_TOLERANCE = 1e-8


@dataclass(frozen=True)
class SolveReport:
    solution: tr.SolutionExpression
    series: fs.FormalSeries
    residual_norm: float
    ic_errors: tuple
    atom_count: int
    used_series_fallback: bool
    truncation: int

    def to_json(self):
        d = self.solution.to_json()
        d.update({
            "series": self.series.to_json(),
            "residual_norm": self.residual_norm,
            "ic_errors": list(self.ic_errors),
            "atom_count": self.atom_count,
            "used_series_fallback": self.used_series_fallback,
            "truncation": self.truncation,
        })
        return d


def _rhs_is_infinite(rhs: Optional[fs.FormalSeries]) -> bool:
    # support reaching the truncation boundary means the tail is unknown
    if rhs is None or rhs.is_zero:
        return False
    return rhs.last_stored_index() >= rhs.truncation


def _operator_series(spec: tr.EquationSpec, truncation: int) -> fs.FormalSeries:
    exact = spec.exact
    poly = rf.Poly(list(spec.operator), exact=exact)
    coeffs = [poly.coeffs[poly.degree() - i] for i in range(poly.degree() + 1)]
    return fs.FormalSeries(-poly.degree(), coeffs, truncation, nu=spec.nu,
                           exact=exact)


def _solve_in_field(spec: tr.EquationSpec, truncation: int) -> fs.FormalSeries:
    """Series pathway: y = P^{-1} * (correction + rhs) inside the field."""
    exact = spec.exact
    k = spec.order
    corr = tr.correction_polynomial(spec.operator, spec.initial_conditions,
                                    exact)
    big = truncation + 2 * k + 2
    p_series = _operator_series(spec, big)
    if corr.is_zero:
        corr_series = fs.zero(big, nu=spec.nu, exact=exact)
    else:
        d = corr.degree()
        coeffs = [corr.coeffs[d - i] for i in range(d + 1)]
        corr_series = fs.FormalSeries(-d, coeffs, big, nu=spec.nu, exact=exact)
    rhs = spec.rhs if spec.rhs is not None else fs.zero(big, nu=spec.nu,
                                                        exact=exact)
    return p_series.invert().mul(corr_series.add(rhs)).truncate(truncation)


def implied_leading_coefficients(spec: tr.EquationSpec, truncation=None):
    """The literal leading p-coefficients of the unknown implied by the
    generalized initial conditions, read off the transformed equation."""
    k = spec.order
    if _rhs_is_infinite(spec.rhs):
        y = _solve_in_field(spec, max(k, 2))
        return [y.coeff(i) for i in range(k)]
    eq = tr.forward_equation(spec)
    s = rf.rational_to_series(eq.Y, max(k - 1, 0), nu=spec.nu)
    return [s.coeff(i) for i in range(k)]


def verify(spec: tr.EquationSpec, series: fs.FormalSeries):
    """Apply the operator polynomial through shift powers and compare with
    the right-hand side; returns (residual_norm, ic_errors)."""
    if not series.is_zero and series.valuation() < 0:
        raise ValueError("candidate solution must have valuation >= 0")
    exact = series.exact
    k = spec.order
    applied = fs.zero(series.truncation - k, nu=spec.nu, exact=exact)
    power = series
    for j, qj in enumerate(spec.operator):
        applied = applied.add(power.scale(co.coerce_coeff(qj, exact)))
        if j < k:
            power = power.modified_left_shift()
    top = applied.truncation
    if spec.rhs is not None:
        diff = applied.sub(spec.rhs)
        top = diff.truncation
    else:
        diff = applied
    residual = 0.0
    for n in range(0, top + 1):
        residual = max(residual, abs(complex(diff.coeff(n))))
    implied = implied_leading_coefficients(spec)
    ic_errors = tuple(abs(complex(series.coeff(i)) - complex(implied[i]))
                      for i in range(k))
    return residual, ic_errors


def solve(spec: tr.EquationSpec, truncation=fs.DEFAULT_TRUNCATION,
          real_form=False, force_series=False) -> SolveReport:
    """Full pipeline: forward transform, partial fractions, inverse
    transform, series expansion, and algebraic verification."""
    fallback = force_series or _rhs_is_infinite(spec.rhs)
    if fallback:
        y_series = _solve_in_field(spec, truncation)
        expr = tr.SolutionExpression((), y_series,
                                     (not y_series.is_zero
                                      and y_series.valuation() < 0))
        series = y_series
    else:
        eq = tr.forward_equation(spec)
        expr = tr.inverse_transform(eq.Y, spec.nu, real_form=real_form,
                                    truncation=truncation)
        series = tr.expression_to_series(expr, truncation, nu=spec.nu)
    if not series.is_zero and series.valuation() < 0:
        # not a pointwise function; report an infinite residual rather
        # than pretending the candidate verifies
        residual = math.inf
        ic_errors = tuple(math.inf for _ in range(spec.order))
    else:
        residual, ic_errors = verify(spec, series)
    return SolveReport(expr, series, float(residual), ic_errors,
                       len(expr.atoms), fallback, truncation)


def decompose_space(spec: tr.EquationSpec, real_form=False):
    """Atom basis of the solution space of the homogeneous equation, one
    family per denominator root and multiplicity."""
    if spec.rhs is not None and not spec.rhs.is_zero:
        raise NonHomogeneous("solution-space decomposition needs rhs = 0")
    exact = spec.exact
    poly = rf.Poly(list(spec.operator), exact=exact)
    factored = rf.find_roots(poly)
    one = co.cone(exact)
    atoms = []
    for root, mult in factored.factors:
        for j in range(mult):
            negative = real_form and co.is_negative_real(root, tr.PAIR_EPS)
            lam = -root if negative else root
            if j == 0:
                if co.is_zero(root, 1e-12):
                    atoms.append(tr.SolutionAtom("series_residual", one,
                                                 root, spec.nu, n=0))
                else:
                    atoms.append(tr.SolutionAtom("J" if negative else "I",
                                                 one, lam, spec.nu))
            elif spec.nu == 0.0 and not co.is_zero(root, 1e-12):
                kind = "t_weighted_J" if negative else "t_weighted_I"
                atoms.append(tr.SolutionAtom(kind, one, lam, spec.nu, n=j))
            else:
                atoms.append(tr.SolutionAtom("series_residual", one, root,
                                             spec.nu, n=j))
    atoms.sort(key=tr._atom_sort_key)
    return atoms


def reduced_basis_labels(atoms):
    """Display-only rewriting of order-2 J/I atoms into the order-0/1
    basis via J_2(x) = -J_0(x) + (2/x) J_1(x) and its I twin."""
    labels = []
    for a in atoms:
        if a.nu == 2.0 and a.kind in ("I", "J"):
            s = math.sqrt(abs(complex(a.param)))
            f = a.kind
            labels.append(f"{f}_0({s:g} t)")
            labels.append(f"{f}_1({s:g} t)/({s:g} t)")
        else:
            p = complex(a.param)
            labels.append(f"{a.kind}[param={p.real:g}{p.imag:+g}j, "
                          f"n={a.n}, nu={a.nu:g}]")
    return labels
