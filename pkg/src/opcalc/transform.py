"""Algebraic transforms between the series field and rationals in B.

The forward transform maps p_k to B^{-k} and an equation polynomial in
the modified left shift (with generalized initial conditions) to a
rational equation in B.  The inverse transform decomposes a rational
into partial fractions and recognizes the named Bessel atoms from the
transform table; anything unmatched falls back to a formal-series
residual.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import coefficients as co
from . import series as fs
from . import ratfun as rf
from .errors import DegenerateOperator, InfiniteResidual

PAIR_EPS = 1e-8

ATOM_KINDS = ("J", "I", "ber", "bei", "t_weighted_I", "t_weighted_J",
              "series_residual")


@dataclass(frozen=True)
class EquationSpec:
    """A problem: sum_j operator[j] * (L_nu)^j y = rhs, with generalized
    initial conditions a_0..a_{K-1}."""

    nu: float
    operator: tuple
    rhs: Optional[fs.FormalSeries]
    initial_conditions: tuple

    def __post_init__(self):
        object.__setattr__(self, "operator", tuple(self.operator))
        object.__setattr__(self, "initial_conditions",
                           tuple(self.initial_conditions))
        if len(self.operator) < 1:
            raise ValueError("operator polynomial is empty")
        if len(self.initial_conditions) != len(self.operator) - 1:
            raise ValueError("need exactly K initial conditions for a "
                             "degree-K operator")

    @property
    def order(self):
        return len(self.operator) - 1

    @property
    def exact(self):
        return co.detect_exact(self.operator + self.initial_conditions)


@dataclass(frozen=True)
class TransformedEquation:
    Y: rf.RationalOperator
    lhs_poly: rf.Poly
    correction: rf.Poly
    rhs_transform: rf.RationalOperator


@dataclass(frozen=True)
class SolutionAtom:
    """A named closed-form solution component.

    kind "I"/"J":  coeff * I_nu(sqrt(param) t) / coeff * J_nu(sqrt(param) t)
    kind "ber"/"bei": coeff * ber_nu(sqrt(param) t) (param is omega)
    kind "t_weighted_I": coeff * (t^n / (n! 2^n param^{n/2})) I_n(sqrt(param) t)
    kind "t_weighted_J": coeff * ((-1)^n t^n / (n! 2^n param^{n/2})) J_n(sqrt(param) t)
    kind "series_residual": expansion of coeff * B/(B-param)^{n+1} (basis use)
    """

    kind: str
    coeff: object
    param: object
    nu: float
    n: int = 0

    def to_json(self):
        return {
            "kind": self.kind,
            "coeff": co.coeff_to_json(self.coeff),
            "param": co.coeff_to_json(self.param),
            "nu": self.nu,
            "n": self.n,
        }


@dataclass(frozen=True)
class SolutionExpression:
    atoms: tuple
    residual_series: Optional[fs.FormalSeries] = None
    non_evaluable_residual: bool = False

    def to_json(self):
        return {
            "atoms": [a.to_json() for a in self.atoms],
            "residual_series": (None if self.residual_series is None
                                else self.residual_series.to_json()),
            "non_evaluable_residual": self.non_evaluable_residual,
        }


# -- forward transform --------------------------------------------------------


def forward_basis(k: int, nu: float = 0.0, exact=False) -> rf.RationalOperator:
    """The transform of p_k, namely B^{-k}."""
    one = co.cone(exact)
    if k > 0:
        return rf.RationalOperator(
            rf.Poly([one], exact=exact),
            rf.FactoredPoly(one, ((co.czero(exact), k),)))
    return rf.RationalOperator(
        rf.Poly([one], exact=exact).shift_powers(-k),
        rf.FactoredPoly(one, ()))


def correction_polynomial(operator, ics, exact) -> rf.Poly:
    """Initial-condition corrections collected on the transform side.

    With generalized initial conditions a_0..a_{K-1}, the leading operator
    power contributes q_K * sum_i a_i B^{K-i}, while every lower power
    j < K contributes -q_j * sum_{i<j} a_i B^{j-i}.
    """
    K = len(operator) - 1
    corr = rf.Poly([], exact=exact)
    for j in range(1, K + 1):
        qj = co.coerce_coeff(operator[j], exact)
        factor = qj if j == K else -qj
        if co.is_zero(factor, co.default_eps(exact)):
            continue
        block = [co.czero(exact)] * (j + 1)
        for i in range(j):
            block[j - i] = co.coerce_coeff(ics[i], exact)
        corr = corr.add(rf.Poly(block, exact=exact).scale(factor))
    return corr


def series_to_rational(s: fs.FormalSeries) -> rf.RationalOperator:
    """Transform of a finite-support series: sum a_k B^{-k}.

    The stored window is taken as the full support; a series whose last
    stored coefficient sits on the truncation boundary is rejected, since
    its tail is unknown.
    """
    exact = s.exact
    if s.is_zero:
        return rf.RationalOperator(rf.Poly([], exact=exact),
                                   rf.FactoredPoly(co.cone(exact), ()))
    last = s.last_stored_index()
    if last >= s.truncation:
        raise InfiniteResidual("series support reaches the truncation "
                               "boundary; no finite rational transform")
    k0 = max(last, 0)
    num = [co.czero(exact)] * (k0 - min(s.val, 0) + 1)
    for k in range(s.val, last + 1):
        num[k0 - k] = s.coeff(k)
    den = (rf.FactoredPoly(co.cone(exact), ((co.czero(exact), k0),))
           if k0 > 0 else rf.FactoredPoly(co.cone(exact), ()))
    return rf.RationalOperator(rf.Poly(num, exact=exact), den)


def _merge_factors(f1, f2):
    out = list(f1)
    for root, mult in f2:
        for i, (r, m) in enumerate(out):
            if rf._roots_equal(r, root):
                out[i] = (r, m + mult)
                break
        else:
            out.append((root, mult))
    return tuple(out)


def forward_equation(spec: EquationSpec) -> TransformedEquation:
    """Transform the equation to lhs_poly(B) * Y = correction + A[rhs],
    and solve for Y with the denominator factored."""
    exact = spec.exact
    q = [co.coerce_coeff(c, exact) for c in spec.operator]
    if co.is_zero(q[-1], max(co.default_eps(exact), 1e-12 if not exact else 0)):
        raise DegenerateOperator("leading operator coefficient is zero")
    lhs_poly = rf.Poly(q, exact=exact)
    corr = correction_polynomial(spec.operator, spec.initial_conditions, exact)
    if spec.rhs is None or spec.rhs.is_zero:
        rhs_rat = rf.RationalOperator(rf.Poly([], exact=exact),
                                      rf.FactoredPoly(co.cone(exact), ()))
    else:
        rhs_rat = series_to_rational(spec.rhs)
    num_sum = rf.RationalOperator(corr, rf.FactoredPoly(co.cone(exact), ())
                                  ).add(rhs_rat)
    lhs_factored = rf.find_roots(lhs_poly)
    y = rf.RationalOperator(
        num_sum.num,
        rf.FactoredPoly(lhs_factored.leading * num_sum.den.leading,
                        _merge_factors(lhs_factored.factors,
                                       num_sum.den.factors)))
    return TransformedEquation(y.simplify(), lhs_poly, corr, rhs_rat)


# -- inverse transform ---------------------------------------------------------


def _binomial_expansion(root, n, coeff, truncation, nu, exact):
    """Series of coeff * B/(B - root)^(n+1):
    sum_j C(j+n, n) root^j p_{j+n}."""
    if n > truncation:
        return fs.zero(truncation, nu=nu, exact=exact)
    out = []
    term = co.coerce_coeff(coeff, exact)
    root = co.coerce_coeff(root, exact)
    binom = 1
    power = co.cone(exact)
    for j in range(truncation - n + 1):
        if j > 0:
            binom = binom * (j + n) // j
            power = power * root
        out.append(term * binom * power)
    return fs.FormalSeries(n, out, truncation, nu=nu, exact=exact)


def inverse_transform(y: rf.RationalOperator, nu: float, real_form=False,
                      truncation=fs.DEFAULT_TRUNCATION) -> SolutionExpression:
    """Partial-fraction y and map each piece to a Bessel atom when the
    transform table applies; everything else lands in a series residual."""
    ys = y.simplify()
    terms = rf.partial_fractions(ys)
    exact = ys.num.exact
    atoms = []
    residual = fs.zero(truncation, nu=nu, exact=exact)
    b_over = [t for t in terms if t.form == "B_over_pow"]
    others = [t for t in terms if t.form != "B_over_pow"]
    if real_form and not exact:
        b_over, pairs = _pair_kelvin(b_over, nu)
        atoms.extend(pairs)
    for t in b_over:
        root, m, c = t.root, t.mult, t.coeff
        if m == 1:
            if real_form and co.is_negative_real(root, PAIR_EPS):
                lam = -root
                atoms.append(SolutionAtom("J", c / co.half_power(lam, nu),
                                          lam, nu))
            else:
                atoms.append(SolutionAtom("I", c / co.half_power(root, nu),
                                          root, nu))
        elif nu == 0.0:
            if real_form and co.is_negative_real(root, PAIR_EPS):
                atoms.append(SolutionAtom("t_weighted_J", c, -root, nu,
                                          n=m - 1))
            else:
                atoms.append(SolutionAtom("t_weighted_I", c, root, nu,
                                          n=m - 1))
        else:
            residual = residual.add(
                _binomial_expansion(root, m - 1, c, truncation, nu, exact))
    for t in others:
        if t.form == "one_over_pow":
            # root is ~0 here: coeff / B^m  <->  coeff * p_m
            residual = residual.add(
                fs.basis(t.mult, truncation, nu=nu, exact=exact)
                .scale(t.coeff).truncate(truncation))
        else:
            # poly part: coeff * B^power  <->  coeff * p_{-power}
            residual = residual.add(
                fs.FormalSeries(-t.mult, [t.coeff], truncation, nu=nu,
                                exact=exact))
    atoms.sort(key=_atom_sort_key)
    if residual.is_zero:
        return SolutionExpression(tuple(atoms), None, False)
    return SolutionExpression(tuple(atoms), residual,
                              residual.valuation() < 0)


def _atom_sort_key(a: SolutionAtom):
    p = complex(a.param)
    return (ATOM_KINDS.index(a.kind), a.n, round(p.real, 12), round(p.imag, 12))


def _pair_kelvin(b_over, nu):
    """Recombine conjugate pure-imaginary simple poles into ber/bei atoms."""
    remaining = list(b_over)
    atoms = []
    i = 0
    while i < len(remaining):
        t = remaining[i]
        r = complex(t.root)
        if (t.mult != 1 or abs(r.real) > PAIR_EPS * (1 + abs(r))
                or r.imag <= PAIR_EPS):
            i += 1
            continue
        mate = None
        for j in range(len(remaining)):
            if j == i or remaining[j].mult != 1:
                continue
            rj = complex(remaining[j].root)
            cj = complex(remaining[j].coeff)
            if (abs(rj - r.conjugate()) <= PAIR_EPS * (1 + abs(r))
                    and abs(cj - complex(t.coeff).conjugate())
                    <= PAIR_EPS * (1 + abs(complex(t.coeff)))):
                mate = j
                break
        if mate is None:
            i += 1
            continue
        omega = r.imag
        c = complex(t.coeff)
        if abs(c.real) > PAIR_EPS * (1 + abs(c)):
            atoms.append(SolutionAtom("ber", 2 * c.real, omega, nu))
        if abs(c.imag) > PAIR_EPS * (1 + abs(c)):
            atoms.append(SolutionAtom("bei", -2 * c.imag, omega, nu))
        for k in sorted((i, mate), reverse=True):
            remaining.pop(k)
    return remaining, atoms


# -- atom series and forward expression -----------------------------------------


def _geom_powers(x, count, exact):
    out = [co.cone(exact)]
    for _ in range(count):
        out.append(out[-1] * x)
    return out


def atom_to_series(atom: SolutionAtom,
                   truncation=fs.DEFAULT_TRUNCATION) -> fs.FormalSeries:
    """Expand an atom in the p_{k,nu} basis."""
    exact = co.is_exact(atom.coeff) and co.is_exact(atom.param)
    lam = co.coerce_coeff(atom.param, exact)
    c = co.coerce_coeff(atom.coeff, exact)
    nu = atom.nu
    if atom.kind == "I":
        s = c * co.half_power(lam, nu)
        exact = exact and co.is_exact(s)
        coeffs = [co.coerce_coeff(s, exact) * g
                  for g in _geom_powers(co.coerce_coeff(lam, exact),
                                        truncation, exact)]
        return fs.FormalSeries(0, coeffs, truncation, nu=nu, exact=exact)
    if atom.kind == "J":
        s = c * co.half_power(lam, nu)
        exact = exact and co.is_exact(s)
        coeffs = [co.coerce_coeff(s, exact) * g
                  for g in _geom_powers(-co.coerce_coeff(lam, exact),
                                        truncation, exact)]
        return fs.FormalSeries(0, coeffs, truncation, nu=nu, exact=exact)
    if atom.kind in ("ber", "bei"):
        # real/imaginary coefficient parts of the I series at lam = i*omega
        if exact:
            iw = co.ExactComplex(0, lam.re)
            g = _geom_powers(iw, truncation, True)
            parts = [co.ExactComplex(x.re) if atom.kind == "ber"
                     else co.ExactComplex(x.im) for x in g]
            coeffs = [c * x for x in parts]
        else:
            iw = 1j * complex(lam)
            g = _geom_powers(iw, truncation, False)
            parts = [x.real if atom.kind == "ber" else x.imag for x in g]
            coeffs = [complex(c) * x for x in parts]
        return fs.FormalSeries(0, coeffs, truncation, nu=nu, exact=exact)
    if atom.kind == "t_weighted_I":
        return _binomial_expansion(lam, atom.n, c, truncation, nu, exact)
    if atom.kind == "t_weighted_J":
        return _binomial_expansion(-lam, atom.n, c, truncation, nu, exact)
    if atom.kind == "series_residual":
        return _binomial_expansion(lam, atom.n, c, truncation, nu, exact)
    raise ValueError(f"unknown atom kind {atom.kind!r}")


def expression_to_series(expr: SolutionExpression, truncation=fs.DEFAULT_TRUNCATION,
                         nu=0.0) -> fs.FormalSeries:
    exact = (expr.residual_series.exact if expr.residual_series is not None
             else all(co.is_exact(a.coeff) and co.is_exact(a.param)
                      for a in expr.atoms) and bool(expr.atoms))
    out = fs.zero(truncation, nu=nu, exact=exact)
    for a in expr.atoms:
        out = out.add(atom_to_series(a, truncation))
    if expr.residual_series is not None:
        out = out.add(expr.residual_series.truncate(truncation))
    return out


def forward_expression(expr: SolutionExpression, nu: float) -> rf.RationalOperator:
    """Transform an expression back to a rational in B (round-trip check)."""
    exact = all(co.is_exact(a.coeff) and co.is_exact(a.param)
                for a in expr.atoms)
    if expr.residual_series is not None:
        exact = exact and expr.residual_series.exact
    one = co.cone(exact)
    total = rf.RationalOperator(rf.Poly([], exact=exact),
                                rf.FactoredPoly(one, ()))
    for a in expr.atoms:
        lam = co.coerce_coeff(a.param, exact)
        c = co.coerce_coeff(a.coeff, exact)
        zero = co.czero(exact)
        if a.kind == "I":
            s = co.coerce_coeff(c * co.half_power(lam, nu), exact)
            r = rf.RationalOperator(rf.Poly([zero, s], exact=exact),
                                    rf.FactoredPoly(one, ((lam, 1),)))
        elif a.kind == "J":
            s = co.coerce_coeff(c * co.half_power(lam, nu), exact)
            r = rf.RationalOperator(rf.Poly([zero, s], exact=exact),
                                    rf.FactoredPoly(one, ((-lam, 1),)))
        elif a.kind == "ber":
            iw = (co.ExactComplex(0, lam.re) if exact
                  else 1j * complex(lam))
            r = rf.RationalOperator(rf.Poly([zero, zero, c], exact=exact),
                                    rf.FactoredPoly(one, ((iw, 1), (-iw, 1))))
        elif a.kind == "bei":
            iw = (co.ExactComplex(0, lam.re) if exact
                  else 1j * complex(lam))
            r = rf.RationalOperator(rf.Poly([zero, c * lam], exact=exact),
                                    rf.FactoredPoly(one, ((iw, 1), (-iw, 1))))
        elif a.kind in ("t_weighted_I", "series_residual"):
            r = rf.RationalOperator(rf.Poly([zero, c], exact=exact),
                                    rf.FactoredPoly(one, ((lam, a.n + 1),)))
        elif a.kind == "t_weighted_J":
            r = rf.RationalOperator(rf.Poly([zero, c], exact=exact),
                                    rf.FactoredPoly(one, ((-lam, a.n + 1),)))
        else:
            raise ValueError(f"unknown atom kind {a.kind!r}")
        total = total.add(r)
    if expr.residual_series is not None and not expr.residual_series.is_zero:
        total = total.add(series_to_rational(expr.residual_series))
    return total


# -- transform table -------------------------------------------------------------


def _lambda_power_prefix(symbol: str, exponent: float) -> str:
    if exponent == 0:
        return ""
    if float(exponent).is_integer():
        exponent = int(exponent)
        if exponent == 1:
            return f"{symbol}*"
        return f"{symbol}^{exponent}*"
    return f"{symbol}^{exponent:g}*"


def table_rows(nu: float):
    """The six transform-table rows with nu substituted."""
    g = nu / 2
    return [
        {"function": "ber_nu(sqrt(omega) t)",
         "transform_numerator": "B^2",
         "transform_denominator": "B^2 + omega^2",
         "nu": nu, "nu_dependence": None},
        {"function": "bei_nu(sqrt(omega) t)",
         "transform_numerator": "omega*B",
         "transform_denominator": "B^2 + omega^2",
         "nu": nu, "nu_dependence": None},
        {"function": "(I_nu(sqrt(lambda) t) + J_nu(sqrt(lambda) t))/2",
         "transform_numerator": f"{_lambda_power_prefix('lambda', g)}B^2",
         "transform_denominator": "B^2 - lambda^2",
         "nu": nu, "nu_dependence": g},
        {"function": "(I_nu(sqrt(lambda) t) - J_nu(sqrt(lambda) t))/2",
         "transform_numerator": f"{_lambda_power_prefix('lambda', g + 1)}B",
         "transform_denominator": "B^2 - lambda^2",
         "nu": nu, "nu_dependence": g},
        {"function": "I_nu(sqrt(lambda) t)",
         "transform_numerator": f"{_lambda_power_prefix('lambda', g)}B",
         "transform_denominator": "B - lambda",
         "nu": nu, "nu_dependence": g},
        {"function": "J_nu(sqrt(lambda) t)",
         "transform_numerator": f"{_lambda_power_prefix('lambda', g)}B",
         "transform_denominator": "B + lambda",
         "nu": nu, "nu_dependence": g},
    ]
