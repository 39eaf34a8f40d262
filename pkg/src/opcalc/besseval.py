"""Concrete realization of the basis and pointwise evaluation.

The abstract index k is realized as p_{k,nu}(t) = (t/2)^(2k+nu) /
(Gamma(nu+1+k) k!).  Negative indices are abstract bookkeeping symbols
only and are never evaluated.  On this realization the modified left
shift acts as the differential operator (1/t) D t D - nu^2/t^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import coefficients as co
from . import series as fs
from . import transform as tr
from .errors import DomainError, NegativeValuation


@dataclass(frozen=True)
class EvalResult:
    value: complex
    truncation_bound: float


def p_eval(k: int, nu: float, t: float) -> float:
    """The realized basis function p_{k,nu}(t) for k >= 0."""
    if k < 0:
        raise DomainError("negative basis indices are abstract-only")
    x = nu + 1 + k
    if x <= 0 and float(x).is_integer():
        raise DomainError(f"Gamma pole at nu+1+k = {x}")
    if t < 0:
        raise DomainError("t must be nonnegative")
    power = 2 * k + nu
    if t == 0:
        if power > 0:
            return 0.0
        if power == 0:
            return 1.0 / (math.gamma(x) * math.factorial(k))
        raise DomainError("t = 0 with negative power 2k+nu")
    if x > 0:
        logv = power * math.log(t / 2.0) - math.lgamma(x) - math.lgamma(k + 1)
        return math.exp(logv)
    return (t / 2.0) ** power / (math.gamma(x) * math.factorial(k))


def tail_ratio(k: int, nu: float, t: float) -> float:
    """Term ratio p_{k+1,nu}(t)/p_{k,nu}(t) = (t/2)^2 / ((k+1)(nu+k+1))."""
    return (t / 2.0) ** 2 / ((k + 1) * (nu + k + 1))


def eval_series(a: fs.FormalSeries, nu: float, t: float) -> EvalResult:
    """Evaluate sum a_k p_{k,nu}(t) over the known window.

    The truncation bound is |last kept term| * rho/(1-rho) where rho is
    the basis term ratio at the truncation order times the observed
    growth of the trailing coefficients (so the bound stays valid for
    geometrically growing coefficient sequences).
    """
    if a.is_zero:
        return EvalResult(0j, 0.0)
    if a.val < 0:
        raise NegativeValuation("series with negative valuation is not "
                                "pointwise evaluable")
    total = 0j
    last_term = 0.0
    top = a.truncation
    for k in range(a.val, top + 1):
        c = a.coeff(k)
        if co.is_zero(c, a.eps):
            continue
        pk = p_eval(k, nu, t)
        total += complex(c) * pk
        last_term = abs(complex(c)) * pk
    rho = tail_ratio(top, nu, t)
    c_top = abs(complex(a.coeff(top)))
    c_prev = abs(complex(a.coeff(top - 1))) if top - 1 >= a.val else 0.0
    if c_top > 0 and c_prev > 0:
        rho *= max(1.0, c_top / c_prev)
    if rho < 1 and last_term > 0:
        bound = last_term * rho / (1 - rho)
    elif last_term == 0.0:
        bound = 0.0
    else:
        bound = math.inf
    return EvalResult(total, bound)


def apply_Lnu_series(a: fs.FormalSeries) -> fs.FormalSeries:
    """The modified left shift, exposed with its analytic meaning: on the
    realized series this is the operator (1/t) D t D - nu^2/t^2."""
    return a.modified_left_shift()


def bessel_atom_eval(atom: tr.SolutionAtom, t: float,
                     truncation=fs.DEFAULT_TRUNCATION) -> EvalResult:
    """Evaluate a named atom by its defining series in the p basis."""
    s = tr.atom_to_series(atom, truncation)
    if not s.is_zero and s.valuation() < 0:
        raise DomainError("atom expands to a non-evaluable series")
    return eval_series(s, atom.nu, t)


def eval_expression(expr: tr.SolutionExpression, nu: float, t: float,
                    truncation=fs.DEFAULT_TRUNCATION) -> EvalResult:
    s = tr.expression_to_series(expr, truncation, nu=nu)
    return eval_series(s, nu, t)
