from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ladderpt.algebra import (
    HW,
    SU2,
    AlgebraMismatchError,
    OperatorExpr,
    adjoint,
    commutator,
    hw,
    is_hermitian,
    multiply,
    normal_order,
    op,
    simplify,
    su2,
)
from ladderpt.engine import iterate
from ladderpt.models import stark_problem, zeeman_problem
from ladderpt.oracle import BasisSpec, exact_matrix_rep, exact_word_matrix, matrix_rep
from ladderpt.scalars import Scalar
from strategies import exprs, words

hbar = Scalar.param("hbar")


def test_a_adag():
    assert normal_order(["a", "a†"]) == hw(1, 1) + hw(0, 0)


def test_lminus_lplus():
    assert normal_order(["L-", "L+"]) == su2(1, 0, 1) + su2(0, 1, 0, -2 * hbar)


def test_aa_adag_adag():
    assert normal_order(["a", "a", "a†", "a†"]) == hw(2, 2) + hw(1, 1, 4) + hw(0, 0, 2)


def test_aa_adag_adag_against_5x5_matrices():
    basis = BasisSpec.hw(5)
    lhs = exact_matrix_rep(normal_order(["a", "a", "a†", "a†"]), basis)
    rhs = exact_word_matrix(["a", "a", "a†", "a†"], basis)
    # the last two rows/columns feel the truncation
    assert (lhs[:3, :3] == rhs[:3, :3]).all()


def test_rewrite_rules():
    assert normal_order(["L0", "L+"]) == su2(1, 1, 0) + su2(1, 0, 0, hbar)
    assert normal_order(["L-", "L0"]) == su2(0, 1, 1) + su2(0, 0, 1, hbar)


def test_identity_is_neutral():
    x = op("a†", 3) + op("a") * op("a")
    one = OperatorExpr.identity(HW)
    assert one * x == x and x * one == x


def test_position_squared():
    q = op("a†") + op("a")
    assert q * q == hw(2, 0) + hw(1, 1, 2) + hw(0, 2) + hw(0, 0)


def test_l0_lplus():
    assert multiply(op("L0"), op("L+")) == su2(1, 1, 0) + su2(1, 0, 0, hbar)


def test_stark_g1_v_commutator():
    s = iterate(stark_problem(1))
    expected = OperatorExpr.identity(HW, Scalar.monomial(-1, e=2, field=2, m=-1, omega0=-2))
    assert commutator(s.G(1), s.problem.v) == expected


def test_zeeman_g1_v_commutator():
    s = iterate(zeeman_problem(1))
    assert commutator(s.G(1), s.problem.v) == op("L0", Scalar.param("kappa", -1))


def test_adjoint_examples():
    assert adjoint(op("L+", Scalar.param("u"))) == op("L-", Scalar.param("u_conj"))
    g1 = iterate(zeeman_problem(1)).G(1)
    assert adjoint(g1) == -g1
    assert adjoint(hw(1, 1)) == hw(1, 1)


def test_simplify_examples():
    x = op("L+", Scalar.param("u"))
    assert simplify(x + (-x)).is_zero()
    assert simplify(op("L0", Scalar.monomial(1, u=1, u_conj=1))) == op("L0")
    half = Scalar.monomial(Fraction(1, 2), u=1)
    assert simplify(op("L+", half) + op("L+", half)) == x


def test_mismatched_algebras():
    with pytest.raises(AlgebraMismatchError):
        op("a") * op("L+")
    with pytest.raises(AlgebraMismatchError):
        commutator(op("a"), op("L0"))
    with pytest.raises(AlgebraMismatchError):
        normal_order(["a", "L+"])


def test_deterministic_term_order():
    x = op("a") + op("a†") + hw(1, 1)
    y = hw(1, 1) + op("a†") + op("a")
    assert x.terms == y.terms
    assert [m.powers for m, _ in x.terms] == sorted(m.powers for m, _ in x.terms)


@given(words(HW))
def test_normal_order_sound_hw(word):
    basis = BasisSpec.hw(len(word) + 6)
    lhs = exact_matrix_rep(normal_order(word), basis)
    rhs = exact_word_matrix(word, basis)
    k = basis.dim - len(word)
    assert (lhs[:k, :k] == rhs[:k, :k]).all()


@given(words(SU2), st.integers(3, 4), st.sampled_from([Fraction(1), Fraction(2, 3)]))
def test_normal_order_sound_su2(word, l, h):
    basis = BasisSpec.su2(l)
    vals = {"hbar": h}
    assert (exact_matrix_rep(normal_order(word), basis, vals)
            == exact_word_matrix(word, basis, vals)).all()


def _alg_exprs(alg):
    return exprs(alg, max_terms=2, max_power=2)


@given(st.data())
def test_bilinear_and_associative(algebra, data):
    x, y, z = (data.draw(_alg_exprs(algebra)) for _ in range(3))
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)


@given(st.data())
def test_antisymmetry_and_jacobi(algebra, data):
    x, y, z = (data.draw(_alg_exprs(algebra)) for _ in range(3))
    assert commutator(x, y) == -commutator(y, x)
    assert commutator(x, x).is_zero()
    jac = commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) \
        + commutator(z, commutator(x, y))
    assert jac.is_zero()


@given(st.data())
def test_adjoint_involution_and_antihomomorphism(algebra, data):
    x, y = (data.draw(_alg_exprs(algebra)) for _ in range(2))
    assert adjoint(adjoint(x)) == x
    assert adjoint(x * y) == adjoint(y) * adjoint(x)
    assert is_hermitian(x + adjoint(x))


@given(st.data())
def test_simplify_idempotent_and_faithful(algebra, data):
    x = data.draw(exprs(algebra, with_params=False))
    basis = BasisSpec.hw(12) if algebra == HW else BasisSpec.su2(2)
    vals = {"hbar": Fraction(1)}
    assert simplify(simplify(x)) == simplify(x)
    assert (exact_matrix_rep(simplify(x), basis, vals) == exact_matrix_rep(x, basis, vals)).all()


@given(st.data())
def test_adjoint_is_conjugate_transpose(algebra, data):
    x = data.draw(exprs(algebra))
    vals = {"hbar": 1.3, "omega0": 0.7, "m": 2.0, "kappa": 3.0, "u": 0.6 + 0.8j}
    basis = BasisSpec.hw(8) if algebra == HW else BasisSpec.su2(2)
    np.testing.assert_allclose(matrix_rep(adjoint(x), basis, vals),
                               matrix_rep(x, basis, vals).conj().T, atol=1e-9)
