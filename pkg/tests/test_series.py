"""Unit tests for the truncated formal-series field."""

import math
import random
from fractions import Fraction

import pytest

from opcalc import series as fs
from opcalc.coefficients import ExactComplex as E
from opcalc.errors import BasisMismatch, TruncationExceeded


def exact_eq(a, b):
    """Exact equality on the common known window."""
    return fs.isclose(a, b, tol=0.0)


def test_basis_group_law():
    for k, n in [(0, 0), (1, 2), (3, -1), (-2, -3), (5, -5)]:
        pk = fs.basis(k, 16)
        pn = fs.basis(n, 16)
        assert exact_eq(pk.mul(pn), fs.basis(k + n, 16 + min(k, n)))


def test_valuation():
    assert fs.zero(10).valuation() == math.inf
    a = fs.FormalSeries(-2, [1.0, 0.0, 3.0], 10)
    assert a.valuation() == -2
    # stripped leading zeros move the valuation up
    b = fs.FormalSeries(-2, [0.0, 0.0, 3.0], 10)
    assert b.valuation() == 0


def test_valuation_additive_under_mul():
    a = fs.FormalSeries(-1, [2.0, 1.0], 10)
    b = fs.FormalSeries(3, [5.0], 10)
    assert a.mul(b).valuation() == 2


def test_coeff_window_and_truncation_error():
    a = fs.FormalSeries(1, [1.0, 2.0], 8)
    assert a.coeff(0) == 0
    assert a.coeff(2) == 2.0
    assert a.coeff(8) == 0  # in-window unstored is zero
    with pytest.raises(TruncationExceeded):
        a.coeff(9)


def test_add_window_is_min_truncation():
    a = fs.FormalSeries(0, [1.0], 10)
    b = fs.FormalSeries(0, [1.0], 6)
    assert a.add(b).truncation == 6


def test_invert_geometric():
    g = fs.geometric(E(-1), 20)
    inv = g.invert()
    # (sum (-1)^k p_k)^{-1} = p_0 + p_1
    assert inv.coeff(0) == E(1)
    assert inv.coeff(1) == E(1)
    assert all(inv.coeff(k) == E(0) for k in range(2, 21))
    assert exact_eq(g.mul(inv), fs.basis(0, 20, exact=True))


def test_invert_negative_valuation():
    a = fs.FormalSeries(-2, [E(3), E(1)], 10, exact=True)
    prod = a.mul(a.invert())
    assert exact_eq(prod, fs.basis(0, 10, exact=True))


def test_shift_and_project():
    a = fs.FormalSeries(0, [1.0, 2.0, 3.0], 10)
    s = a.shift(1)
    assert s.valuation() == 1 and s.truncation == 11
    assert s.coeff(2) == 2.0
    p = a.project(1)
    assert p.valuation() == 1 and p.coeff(1) == 2.0 and p.coeff(2) == 0
    assert fs.project(a, 5).is_zero


def test_modified_left_shift():
    assert exact_eq(fs.basis(3, 10).modified_left_shift(), fs.basis(2, 9))
    assert fs.basis(0, 10).modified_left_shift().is_zero
    # L kills p_0 but not p_{-1}
    a = fs.FormalSeries(-1, [1.0], 10)
    assert exact_eq(a.modified_left_shift(), fs.FormalSeries(-2, [1.0], 9))


def test_geometric_is_eigenvector_of_L():
    for x in (E(Fraction(2, 3)), 0.5 + 0.25j):
        g = fs.geometric(x, 12)
        lg = g.modified_left_shift()
        assert fs.isclose(lg, g.scale(x), tol=1e-15)


def test_a0():
    assert fs.eval_at_zero_index(fs.geometric(E(7), 5)) == E(1)
    assert fs.zero(5).a0() == 0


def test_nu_mismatch_raises():
    a = fs.basis(0, 5, nu=0.0)
    b = fs.basis(0, 5, nu=2.0)
    with pytest.raises(BasisMismatch):
        a.add(b)
    # zero series is nu-agnostic
    assert fs.zero(5, nu=1.0).add(a).nu == 0.0


def test_mixed_kinds_raise():
    a = fs.basis(0, 5, exact=True)
    b = fs.basis(0, 5, exact=False)
    with pytest.raises(TypeError):
        a.add(b)


def test_stored_window_past_truncation_rejected():
    with pytest.raises(ValueError):
        fs.FormalSeries(0, [1.0] * 12, 10)


def test_json_round_trip():
    a = fs.FormalSeries(-1, [E(Fraction(1, 3)), E(0, Fraction(2, 5))], 9,
                        nu=2.0, exact=True)
    b = fs.from_json(a.to_json())
    assert b.nu == 2.0 and b.truncation == 9 and exact_eq(a, b)
    z = fs.from_json(fs.zero(7).to_json())
    assert z.is_zero and z.truncation == 7


def random_exact_series(rng, truncation):
    val = rng.randint(-3, 4)
    coeffs = [E(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
              for _ in range(rng.randint(1, truncation - val + 1))]
    return fs.FormalSeries(val, coeffs, truncation, exact=True)


def test_field_axioms_random_sample():
    rng = random.Random(20260823)
    for _ in range(60):
        t = rng.randint(10, 16)
        a = random_exact_series(rng, t)
        b = random_exact_series(rng, t)
        c = random_exact_series(rng, t)
        assert exact_eq(a.mul(b), b.mul(a))
        assert exact_eq(a.mul(b).mul(c), a.mul(b.mul(c)))
        assert exact_eq(a.mul(b.add(c)), a.mul(b).add(a.mul(c)))
        if not a.is_zero and not b.is_zero:
            assert a.mul(b).valuation() == a.valuation() + b.valuation()
        if not a.is_zero:
            assert exact_eq(a.mul(a.invert()), fs.basis(0, t, exact=True))
