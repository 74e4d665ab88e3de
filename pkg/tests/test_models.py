from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ladderpt.algebra import HW, SU2, Monomial, OperatorExpr, adjoint, op
from ladderpt.engine import iterate
from ladderpt.models import (
    StateLabel,
    check_values,
    diagonal_expectation,
    evaluate_spectrum,
    preset,
    stark_problem,
    zeeman_problem,
)
from ladderpt.oracle import BasisSpec, exact_matrix_rep
from ladderpt.scalars import GaussianRational, MissingParameterError, Scalar
from ladderpt.superops import gamma, gamma_inverse, pi_project

STARK_VALUES = {"hbar": 1.0, "m": 1.0, "omega0": 1.0, "e": 1.0, "field": 0.1}
ZEEMAN_VALUES = {"hbar": 1.0, "kappa": 5.0, "u": 1.0, "eps_R": 0.0, "alpha_r2": 0.0}


def test_stark_v():
    v = stark_problem(2).v
    amp = Scalar.monomial(-1, e=1, field=1, hbar=Fraction(1, 2), m=Fraction(-1, 2),
                          omega0=Fraction(-1, 2), **{"2": Fraction(-1, 2)})
    assert [c for _, c in v.terms] == [amp, amp]
    assert pi_project(v).is_zero()
    assert gamma(gamma_inverse(v, stark_problem(2).gap), stark_problem(2).gap) == v


def test_zeeman_v():
    v = zeeman_problem(2).v
    half = Fraction(1, 2)
    assert v == op("L+", Scalar.monomial(half, u=1)) + op("L-", Scalar.monomial(half, u_conj=1))
    assert adjoint(v) == v
    assert pi_project(v).is_zero()


def test_preset_lookup():
    assert preset("stark", 3).name == "stark"
    with pytest.raises(ValueError):
        preset("hydrogen", 3)


def test_state_labels():
    assert StateLabel.parse("3") == StateLabel(n=3)
    assert StateLabel.parse("2:-1") == StateLabel(l=2, m=-1)
    assert str(StateLabel(l=1, m=0)) == "1:0"
    for bad in ("-1", "1:2"):
        with pytest.raises(ValueError):
            StateLabel.parse(bad)


def test_expectation_examples():
    shift = OperatorExpr.identity(HW, Scalar.monomial(Fraction(-1, 2), e=2, field=2, m=-1, omega0=-2))
    vals = {"e": Fraction(1), "field": Fraction(1, 10), "m": Fraction(2), "omega0": Fraction(1)}
    got = {diagonal_expectation(shift, StateLabel(n=n), vals, exact=True) for n in range(5)}
    assert got == {GaussianRational(Fraction(-1, 400))}

    h = {"hbar": Fraction(3, 2)}
    for m in (-1, 0, 1):
        assert diagonal_expectation(op("L0"), StateLabel(l=1, m=m), h, exact=True) == m * h["hbar"]
    assert diagonal_expectation(op("L+") * op("L-"), StateLabel(l=1, m=1), h, exact=True) \
        == 2 * h["hbar"] ** 2


def test_expectation_rejects_offdiagonal():
    with pytest.raises(ValueError, match="not diagonal"):
        diagonal_expectation(op("L+"), StateLabel(l=1, m=0), {"hbar": 1})


@given(st.integers(0, 4), st.integers(0, 10))
def test_hw_expectation_matches_matrix(k, n):
    mono = OperatorExpr.term(1, Monomial(HW, (k, k)))
    mat = exact_matrix_rep(mono, BasisSpec.hw(16))
    assert diagonal_expectation(mono, StateLabel(n=n), {}, exact=True) == mat[n, n]


@given(st.integers(0, 4), st.integers(0, 3), st.integers(0, 4), st.data())
def test_su2_expectation_matches_matrix(k, p, l, data):
    m = data.draw(st.integers(-l, l))
    mono = OperatorExpr.term(1, Monomial(SU2, (k, p, k)))
    vals = {"hbar": Fraction(2, 3)}
    mat = exact_matrix_rep(mono, BasisSpec.su2(l), vals)
    assert diagonal_expectation(mono, StateLabel(l=l, m=m), vals, exact=True) == mat[l - m, l - m]


def test_stark_spectrum():
    rows = evaluate_spectrum(iterate(stark_problem(4)), [StateLabel(n=n) for n in range(4)],
                             STARK_VALUES)
    for n, row in enumerate(rows):
        assert row.e0 == n + 0.5
        assert row.energy - row.e0 == pytest.approx(-0.005, abs=1e-15)


def test_stark_unperturbed_limit():
    rows = evaluate_spectrum(iterate(stark_problem(4)), [StateLabel(n=n) for n in range(4)],
                             dict(STARK_VALUES, field=0.0))
    assert [r.energy for r in rows] == [n + 0.5 for n in range(4)]


def test_zeeman_spectrum():
    states = [StateLabel(l=1, m=m) for m in (1, 0, -1)]
    rows = evaluate_spectrum(iterate(zeeman_problem(4)), states, ZEEMAN_VALUES)
    up, mid, down = (r.energy - r.e0 for r in rows)
    assert up == pytest.approx(0.099, abs=1e-15)
    assert down == -up and mid == 0
    assert abs(up - (26 ** 0.5 - 5)) < 3e-5


def test_zeeman_shift_linear_in_m():
    s = iterate(zeeman_problem(6))
    states = [StateLabel(l=3, m=m) for m in range(-3, 4) if m]
    rows = evaluate_spectrum(s, states, ZEEMAN_VALUES)
    ratios = {round((r.energy - r.e0) / r.state.m, 14) for r in rows}
    assert len(ratios) == 1


def test_zeeman_central_terms():
    vals = dict(ZEEMAN_VALUES, eps_R=-2.0, alpha_r2=0.5, hbar=2.0)
    row, = evaluate_spectrum(iterate(zeeman_problem(2)), [StateLabel(l=2, m=0)], vals)
    assert row.e0 == -2.0 + 0.5 * 6 * 4


def test_value_checks():
    with pytest.raises(ValueError):
        check_values({"hbar": -1})
    with pytest.raises(ValueError):
        check_values({"u": 2})
    assert check_values({"u": 1j})["u_conj"] == -1j


def test_missing_values():
    with pytest.raises(MissingParameterError):
        evaluate_spectrum(iterate(stark_problem(2)), [StateLabel(n=0)], {"hbar": 1})


def test_state_algebra_mismatch():
    with pytest.raises(ValueError):
        evaluate_spectrum(iterate(stark_problem(2)), [StateLabel(l=1, m=0)], STARK_VALUES)
