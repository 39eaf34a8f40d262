"""Unit tests for the realized basis and pointwise evaluation."""

import math
from fractions import Fraction

import pytest

from opcalc import besseval as bv
from opcalc import series as fs
from opcalc import transform as tr
from opcalc.coefficients import ExactComplex as E
from opcalc.errors import DomainError, NegativeValuation

# Frozen oracle values, computed independently with exact rational partial
# sums of the defining series (30 terms, error < 1e-60).
J0_AT_1 = 0.7651976865579666
I0_AT_1 = 1.2660658777520084


def oracle_bessel(t, sign, terms=30):
    """Exact-rational partial sum of sum sign^k (t^2/4)^k / (k!)^2."""
    x = Fraction(t) ** 2 / 4
    acc = Fraction(0)
    term = Fraction(1)
    for k in range(terms):
        acc += term
        term = term * sign * x / ((k + 1) * (k + 1))
    return float(acc)


def test_oracle_self_consistency():
    assert oracle_bessel(1, -1) == pytest.approx(J0_AT_1, abs=1e-15)
    assert oracle_bessel(1, 1) == pytest.approx(I0_AT_1, abs=1e-15)


def test_p_eval_basics():
    assert bv.p_eval(0, 0.0, 0.0) == 1.0
    assert bv.p_eval(1, 0.0, 0.0) == 0.0
    # at t = 2 the power factor is 1, leaving 1/(k! * k!)
    for k in range(6):
        assert bv.p_eval(k, 0.0, 2.0) == pytest.approx(
            1.0 / math.factorial(k) ** 2, rel=1e-13)
    # nu = 2 weight
    assert bv.p_eval(0, 2.0, 2.0) == pytest.approx(1.0 / 2.0, rel=1e-13)


def test_p_eval_domain_errors():
    with pytest.raises(DomainError):
        bv.p_eval(-1, 0.0, 1.0)
    with pytest.raises(DomainError):
        bv.p_eval(0, -1.0, 1.0)  # Gamma pole at nu+1+k = 0
    with pytest.raises(DomainError):
        bv.p_eval(0, 0.0, -1.0)
    with pytest.raises(DomainError):
        bv.p_eval(0, -0.5, 0.0)  # negative power at t = 0


def test_p_eval_noninteger_negative_argument():
    # nu + 1 + k between poles is fine
    val = bv.p_eval(0, -1.5, 1.0)
    assert math.isfinite(val)


def test_eval_series_bessel_j0():
    g = fs.geometric(E(-1), 40)
    res = bv.eval_series(g, 0.0, 1.0)
    assert res.value.real == pytest.approx(J0_AT_1, abs=1e-12)
    assert res.value.imag == 0
    assert res.truncation_bound < 1e-40


def test_eval_series_bound_is_honest():
    # compare a short window against a long one; the gap must be bounded
    short = fs.geometric(E(1), 12)
    long = fs.geometric(E(1), 60)
    for t in (0.5, 1.0, 2.0, 4.0):
        r_short = bv.eval_series(short, 0.0, t)
        r_long = bv.eval_series(long, 0.0, t)
        assert abs(r_short.value - r_long.value) <= r_short.truncation_bound


def test_eval_series_negative_valuation_rejected():
    a = fs.FormalSeries(-1, [1.0, 1.0], 10)
    with pytest.raises(NegativeValuation):
        bv.eval_series(a, 0.0, 1.0)


def test_eval_zero_series():
    res = bv.eval_series(fs.zero(10), 0.0, 1.0)
    assert res.value == 0 and res.truncation_bound == 0.0


def test_bessel_atom_eval_matches_series():
    atom = tr.SolutionAtom("I", 1.0, 1.0 + 0j, 0.0)
    res = bv.bessel_atom_eval(atom, 1.0, truncation=40)
    assert res.value.real == pytest.approx(I0_AT_1, abs=1e-12)


def test_apply_Lnu_matches_finite_differences():
    # (1/t) D t D - nu^2/t^2 applied to the realized series
    for nu, series in [(0.0, fs.geometric(-1.0 + 0j, 40)),
                       (2.0, fs.geometric(0.5 + 0j, 40, nu=2.0))]:
        shifted = bv.apply_Lnu_series(series)
        for t in (0.5, 1.0, 2.0):
            h = 1e-2

            def f(x, series=series, nu=nu):
                return bv.eval_series(series, nu, x).value.real

            d1 = (-f(t + 2 * h) + 8 * f(t + h)
                  - 8 * f(t - h) + f(t - 2 * h)) / (12 * h)
            d2 = (-f(t + 2 * h) + 16 * f(t + h) - 30 * f(t)
                  + 16 * f(t - h) - f(t - 2 * h)) / (12 * h ** 2)
            numeric = d2 + d1 / t - nu ** 2 / t ** 2 * f(t)
            predicted = bv.eval_series(shifted, nu, t).value.real
            assert numeric == pytest.approx(predicted, abs=1e-6)
