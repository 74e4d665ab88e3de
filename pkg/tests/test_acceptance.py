"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line; the lines are also
collected and repeated in the pytest terminal summary.  Run directly with
``python tests/test_acceptance.py`` for just the nine lines.
"""

import math
import sys
from fractions import Fraction

from ladderpt.algebra import HW, SU2, OperatorExpr, op
from ladderpt.engine import iterate
from ladderpt.models import stark_problem, zeeman_problem
from ladderpt.oracle import BasisSpec, eigenvalues_hermitian, hamiltonian_matrix, similarity_check
from ladderpt.scalars import GaussianRational, Scalar
from ladderpt.verify import (
    binomial_half,
    hermiticity_failures,
    jacobi_failures,
    superop_failures,
    zeeman_energy_errors,
)

RESULTS: list[str] = []


def record(n: int, title: str, ok: bool, detail: str = ""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def _stark_shift():
    return OperatorExpr.identity(
        HW, Scalar.monomial(Fraction(-1, 2), e=2, field=2, m=-1, omega0=-2))


def test_1_stark_termination():
    s = iterate(stark_problem(6))
    zero = OperatorExpr.zero(HW)
    checks = {
        "W": s.w_total() == _stark_shift(),
        "W_1": s.W(1) == zero,
        "G_2": s.G(2) == zero,
        **{f"A_{n}": s.A(n) == zero for n in range(3, 7)},
    }
    bad = [k for k, ok in checks.items() if not ok]
    record(1, "Stark W = -(1/2)m(eE/m w0)^2 exactly, W_1 = G_2 = 0, A_3..A_6 = 0",
           not bad, f"mismatch: {bad}" if bad else "")


def test_2_stark_generator():
    g = iterate(stark_problem(6)).g_total()
    ladder = (op("a†") - op("a")).scale(
        Scalar.monomial(-1, e=1, field=1, hbar=Fraction(-1, 2), m=Fraction(-1, 2),
                        omega0=Fraction(-3, 2), **{"2": Fraction(-1, 2)}))
    # p = i sqrt(hbar m w0 / 2) (a† - a)
    p_hat = (op("a†") - op("a")).scale(
        Scalar.monomial(GaussianRational(0, 1), hbar=Fraction(1, 2), m=Fraction(1, 2),
                        omega0=Fraction(1, 2), **{"2": Fraction(-1, 2)}))
    momentum_form = p_hat.scale(
        Scalar.monomial(GaussianRational(0, 1), hbar=-1, e=1, field=1, m=-1, omega0=-2))
    record(2, "Stark G = -(eE/hbar w0) sqrt(hbar/2m w0)(a† - a) = (i/hbar)(eE/m w0^2) p",
           g == ladder and g == momentum_form,
           f"ladder form {g == ladder}, momentum form {g == momentum_form}")


def test_3_zeeman_printed_operators():
    s = iterate(zeeman_problem(4))
    v, g1, l0 = s.problem.v, s.G(1), op("L0")
    zero = OperatorExpr.zero(SU2)
    k = lambda c, p: Scalar.monomial(Fraction(c), kappa=p)  # noqa: E731
    checks = {
        "A_2": s.A(2) == l0.scale(k(Fraction(1, 2), -1)),
        "W_2": s.W(2) == l0.scale(k(Fraction(1, 2), -1)),
        "G_2": s.G(2) == zero,
        "A_3": s.A(3) == v.scale(k(Fraction(-1, 3), -2)),
        "W_3": s.W(3) == zero,
        "G_3": s.G(3) == g1.scale(k(Fraction(-1, 3), -2)),
        "A_4": s.A(4) == l0.scale(k(Fraction(-1, 8), -3)),
        "W_4": s.W(4) == l0.scale(k(Fraction(-1, 8), -3)),
        "G_4": s.G(4) == zero,
    }
    bad = [name for name, ok in checks.items() if not ok]
    record(3, "Zeeman A_n, W_n, G_n for n = 2..4 match the closed forms", not bad,
           f"mismatch: {bad}" if bad else "9/9 exact")


def test_4_zeeman_binomial_series():
    s = iterate(zeeman_problem(6))
    got, bad = [], []
    for j in (1, 2, 3):
        w = s.W(2 * j)
        coeff = w.coefficient(op("L0").terms[0][0])
        c = coeff.coefficient(kappa=1 - 2 * j)
        got.append(str(c))
        expected = binomial_half(j)
        if w != op("L0", Scalar.monomial(expected, kappa=1 - 2 * j)) or c != GaussianRational(expected):
            bad.append(2 * j)
    odd = [n for n in (1, 3, 5) if not s.W(n).is_zero()]
    record(4, "Zeeman W_2j = C(1/2, j) kappa^(1-2j) L0 for j = 1..3, odd W_n = 0",
           not bad and not odd and got == ["1/2", "-1/8", "1/16"],
           f"coefficients {got}; odd nonzero {odd}")


def test_5_zeeman_spectrum():
    worst_ratio, worst_exp = 0.0, 0.0
    for l in (1, 2, 3):
        for kappa in (2.0, 5.0, 10.0):
            for order in (2, 4, 6):
                base = zeeman_energy_errors(l, kappa, order)
                doubled = {m: abs(p - e) for m, p, e in zeeman_energy_errors(l, 2 * kappa, order)}
                for m, pert, exact in base:
                    bound = 2 * kappa ** -(order + 1)
                    worst_ratio = max(worst_ratio, abs(pert - exact) / abs(exact) / bound)
                    slope = math.log(abs(pert - exact) / doubled[m]) / math.log(2)
                    worst_exp = max(worst_exp, abs(slope - (order + 1)))
    record(5, "Zeeman energies vs exact diagonalization, l = 1..3, kappa = 2,5,10, N = 2,4,6",
           worst_ratio <= 1 and worst_exp <= 0.2,
           f"worst relative error / 2 kappa^-(N+1) = {worst_ratio:.3f}; "
           f"worst |exponent - (N+1)| = {worst_exp:.3f}")


def test_6_stark_ground_state():
    vals = {"hbar": 1.0, "m": 1.0, "omega0": 1.0, "e": 1.0, "field": 0.05}
    ground = eigenvalues_hermitian(hamiltonian_matrix(stark_problem(2), BasisSpec.hw(60), vals))[0]
    err = abs((ground - 0.5) - (-(0.05**2) / 2))
    record(6, "Stark N=60 ground state - 1/2 = -(eE)^2/2", err <= 1e-8, f"|error| = {err:.2e}")


def test_7_superoperator_identities():
    counts = {alg: len(superop_failures(alg, 1000)) for alg in (HW, SU2)}
    record(7, "Pi^2 = Pi, Gamma Gamma^-1 = Id - Pi, Pi Gamma = 0, Gamma = [N_gap, .] on 1000 "
           "monomials per algebra", not any(counts.values()), f"failures {counts}")


def test_8_structure():
    counts = {f"jacobi/adjoint {alg}": len(jacobi_failures(alg, 40)) for alg in (HW, SU2)}
    counts["hermiticity to order 6"] = len(hermiticity_failures(6))
    record(8, "Jacobi, adjoint involution, W_n Hermitian and G_n anti-Hermitian",
           not any(counts.values()), f"failures {counts}")


def test_9_similarity():
    zee = similarity_check(iterate(zeeman_problem(4)), BasisSpec.su2(1),
                           {"hbar": 1.0, "kappa": 10.0, "u": 1.0, "eps_R": 0.0, "alpha_r2": 0.0}, 4)
    vals = {"hbar": 1.0, "m": 1.0, "omega0": 1.0, "e": 1.0, "field": 0.05}
    stark = similarity_check(iterate(stark_problem(2)), BasisSpec.hw(60), vals, 2, strengths=(1.0,))
    record(9, "exp(G_4) H exp(-G_4) off-diagonal ~ lambda^5 (Zeeman), Stark order 2 closes",
           abs(zee.exponent - 5) <= 0.3 and stark.residuals[0] <= 1e-10,
           f"Zeeman exponent {zee.exponent:.3f}; Stark residual {stark.residuals[0]:.1e}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_")):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
