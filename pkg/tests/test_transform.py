"""Unit tests for the forward/inverse algebraic transform layer."""

import pytest

from opcalc import ratfun as rf
from opcalc import series as fs
from opcalc import transform as tr
from opcalc.coefficients import ExactComplex as E
from opcalc.errors import DegenerateOperator, InfiniteResidual


def test_forward_basis():
    pos = tr.forward_basis(3)
    assert pos.num.degree() == 0 and dict(pos.den.factors) == {0j: 3}
    neg = tr.forward_basis(-2)
    assert neg.num.degree() == 2 and not neg.den.factors
    assert tr.forward_basis(0).eval(7.0) == pytest.approx(1.0)


def test_correction_polynomial_second_order():
    # operator 2 - 3L + L^2, ics (1, 0): correction is B^2 + 3B
    corr = tr.correction_polynomial((E(2), E(-3), E(1)), (E(1), E(0)), True)
    assert list(corr.coeffs) == [E(0), E(3), E(1)]


def test_correction_polynomial_first_order():
    # operator q0 + q1 L, ic a0: correction is q1 a0 B
    corr = tr.correction_polynomial((E(1), E(1)), (E(1),), True)
    assert list(corr.coeffs) == [E(0), E(1)]


def test_series_to_rational_and_back():
    s = fs.FormalSeries(0, [2.0, 0.0, -1.0], 10)
    r = tr.series_to_rational(s)
    back = rf.rational_to_series(r, 10)
    assert fs.isclose(s, back, tol=1e-13)


def test_series_to_rational_boundary_support_rejected():
    with pytest.raises(InfiniteResidual):
        tr.series_to_rational(fs.geometric(0.5, 10))


def test_forward_equation_first_order():
    spec = tr.EquationSpec(0.0, (E(1), E(1)), None, (E(1),))
    eq = tr.forward_equation(spec)
    # Y = B/(B + 1)
    assert dict(eq.Y.den.factors) == {E(-1): 1}
    assert list(eq.Y.num.coeffs) == [E(0), E(1)]


def test_forward_equation_degenerate():
    spec = tr.EquationSpec(0.0, (E(1), E(0)), None, (E(1),))
    with pytest.raises(DegenerateOperator):
        tr.forward_equation(spec)


def test_equation_spec_validation():
    with pytest.raises(ValueError):
        tr.EquationSpec(0.0, (E(1), E(1)), None, ())
    with pytest.raises(ValueError):
        tr.EquationSpec(0.0, (), None, ())


def test_inverse_transform_simple_pole():
    y = rf.RationalOperator(rf.Poly([0.0, 1.0]),
                            rf.FactoredPoly(1.0 + 0j, ((2.0 + 0j, 1),)))
    expr = tr.inverse_transform(y, nu=0.0)
    (atom,) = expr.atoms
    assert atom.kind == "I" and atom.param == 2.0 + 0j
    assert expr.residual_series is None


def test_inverse_transform_negative_root_real_form():
    y = rf.RationalOperator(rf.Poly([0.0, 1.0]),
                            rf.FactoredPoly(1.0 + 0j, ((-3.0 + 0j, 1),)))
    (atom,) = tr.inverse_transform(y, nu=0.0, real_form=True).atoms
    assert atom.kind == "J" and atom.param == 3.0 + 0j


def test_inverse_transform_repeated_root_nu0():
    y = rf.RationalOperator(rf.Poly([0.0, 1.0]),
                            rf.FactoredPoly(1.0 + 0j, ((2.0 + 0j, 3),)))
    (atom,) = tr.inverse_transform(y, nu=0.0).atoms
    assert atom.kind == "t_weighted_I" and atom.n == 2


def test_inverse_transform_repeated_root_nonzero_nu_falls_back():
    y = rf.RationalOperator(rf.Poly([0.0, 1.0]),
                            rf.FactoredPoly(1.0 + 0j, ((2.0 + 0j, 2),)))
    expr = tr.inverse_transform(y, nu=1.0, truncation=16)
    assert not expr.atoms
    assert expr.residual_series is not None
    assert fs.isclose(expr.residual_series,
                      rf.rational_to_series(y, 16, nu=1.0), tol=1e-12)


def test_inverse_transform_kelvin_pairing():
    # B^2/(B^2 + 1) is the ber atom at omega = 1
    num = rf.Poly([0.0, 0.0, 1.0])
    den = rf.FactoredPoly(1.0 + 0j, ((1j, 1), (-1j, 1)))
    expr = tr.inverse_transform(rf.RationalOperator(num, den), nu=0.0,
                                real_form=True)
    (atom,) = expr.atoms
    assert atom.kind == "ber"
    assert atom.coeff == pytest.approx(1.0)
    assert atom.param == pytest.approx(1.0)


def test_atom_series_round_trip_through_forward():
    for atom in [tr.SolutionAtom("I", 2.0, 3.0 + 0j, 0.0),
                 tr.SolutionAtom("J", 1.5, 2.0 + 0j, 0.0),
                 tr.SolutionAtom("t_weighted_I", 1.0, 2.0 + 0j, 0.0, n=2),
                 tr.SolutionAtom("ber", 1.0, 1.0, 0.0),
                 tr.SolutionAtom("bei", 1.0, 1.0, 0.0)]:
        expr = tr.SolutionExpression((atom,))
        y = tr.forward_expression(expr, 0.0)
        s1 = tr.atom_to_series(atom, 24)
        s2 = rf.rational_to_series(y, 24)
        assert fs.isclose(s1, s2, tol=1e-10), atom.kind


def test_non_evaluable_residual_flag():
    # Y = B^2/(B - 1) is improper; the poly part maps to p_{-1}
    y = rf.RationalOperator(rf.Poly([0.0, 0.0, 1.0]),
                            rf.FactoredPoly(1.0 + 0j, ((1.0 + 0j, 1),)))
    expr = tr.inverse_transform(y, nu=0.0)
    assert expr.non_evaluable_residual
    assert expr.residual_series.valuation() == -1


def test_table_rows():
    rows0 = tr.table_rows(0.0)
    assert len(rows0) == 6
    by_fn = {r["function"]: r for r in rows0}
    i_row = by_fn["I_nu(sqrt(lambda) t)"]
    assert i_row["transform_numerator"] == "B"
    assert i_row["transform_denominator"] == "B - lambda"
    rows2 = tr.table_rows(2.0)
    i_row2 = [r for r in rows2 if r["function"].startswith("I_nu")][0]
    assert i_row2["transform_numerator"] == "lambda*B"
    ber = [r for r in rows2 if r["function"].startswith("ber")][0]
    assert ber["transform_numerator"] == "B^2"
    assert ber["transform_denominator"] == "B^2 + omega^2"
