"""Self-check suite behind ``ladderpt verify``.

Checks are grouped by scope:

``superops``   projector/derivation identities on random monomials
``structure``  Jacobi identity, adjoint involution, Hermiticity ladder
``goldens``    closed-form results of both presets, compared exactly
``oracle``     matrix-representation and exact-diagonalization cross-checks
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from . import superops
from .algebra import HW, SU2, Monomial, OperatorExpr, adjoint, commutator, op
from .engine import iterate
from .models import StateLabel, evaluate_spectrum, stark_problem, zeeman_problem
from .oracle import (
    BasisSpec,
    eigenvalues_hermitian,
    exact_matmul,
    exact_matrix_rep,
    hamiltonian_matrix,
    similarity_check,
    truncation_ok,
)
from .scalars import GaussianRational, Scalar

SCOPES = ("superops", "structure", "goldens", "oracle")

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class Outcome:
    name: str
    status: str
    detail: str = ""

    def line(self) -> str:
        tail = f": {self.detail}" if self.detail else ""
        return f"[{self.status.upper()}] {self.name}{tail}"


def compare(name: str, expected: OperatorExpr, actual: OperatorExpr) -> Outcome:
    if expected == actual:
        return Outcome(name, PASS)
    return Outcome(
        name, FAIL, f"expected {expected.to_text()!s} but got {actual.to_text()!s}"
    )


# -- random expressions -------------------------------------------------------

_PARAM_POOL = {
    HW: ["hbar", "omega0", "m", "field"],
    SU2: ["hbar", "kappa", "u", "u_conj", "L2"],
}


def random_scalar(rng: random.Random, algebra: str, with_params: bool = True) -> Scalar:
    c = Fraction(rng.randint(-6, 6) or 1, rng.randint(1, 4))
    im = Fraction(rng.randint(-2, 2), rng.randint(1, 3)) if rng.random() < 0.3 else 0
    powers = {}
    if with_params:
        for name in rng.sample(_PARAM_POOL[algebra], rng.randint(0, 2)):
            powers[name] = Fraction(rng.randint(-2, 2), rng.choice([1, 1, 2]))
    return Scalar({tuple(powers.items()): GaussianRational(c, im)})


def random_monomial(rng: random.Random, algebra: str, max_power: int = 3) -> Monomial:
    size = 2 if algebra == HW else 3
    return Monomial(algebra, tuple(rng.randint(0, max_power) for _ in range(size)))


def random_expr(rng: random.Random, algebra: str, n_terms: int = 3, max_power: int = 2,
                with_params: bool = True) -> OperatorExpr:
    return OperatorExpr(
        algebra,
        [(random_monomial(rng, algebra, max_power), random_scalar(rng, algebra, with_params))
         for _ in range(n_terms)],
    )


def random_word(rng: random.Random, algebra: str, length: int) -> list[str]:
    gens = ["a", "a†"] if algebra == HW else ["L+", "L0", "L-"]
    return [rng.choice(gens) for _ in range(length)]


# -- superoperator identities ---------------------------------------------------

GAPS = {
    HW: superops.GapSpec(HW, Scalar.monomial(1, hbar=1, omega0=1)),
    SU2: superops.GapSpec(SU2, Scalar.monomial(1, hbar=1, kappa=1)),
}


def superop_failures(algebra: str, samples: int, seed: int = 0) -> list[str]:
    """Run every superoperator identity on ``samples`` random monomials."""
    rng = random.Random(seed)
    gap = GAPS[algebra]
    n_gap = gap.generator()
    failures = []
    for i in range(samples):
        x = OperatorExpr.term(random_scalar(rng, algebra), random_monomial(rng, algebra, 3))
        px = superops.pi_project(x)
        gx = superops.gamma(x, gap)
        gix = superops.gamma_inverse(x, gap)
        checks = {
            "Pi∘Pi = Pi": superops.pi_project(px) == px,
            "Gamma∘Gamma⁻¹ = Id - Pi": superops.gamma(gix, gap) == x - px,
            "Gamma⁻¹∘Gamma = Id - Pi": superops.gamma_inverse(gx, gap) == x - px,
            "Pi∘Gamma = 0": superops.pi_project(gx).is_zero(),
            "Gamma∘Pi = 0": superops.gamma(px, gap).is_zero(),
            "Gamma(X) = [N_gap, X]": gx == commutator(n_gap, x),
        }
        failures += [f"sample {i} ({x.to_text()}): {k}" for k, ok in checks.items() if not ok]
    return failures


def jacobi_failures(algebra: str, samples: int, seed: int = 1) -> list[str]:
    rng = random.Random(seed)
    failures = []
    for i in range(samples):
        x, y, z = (random_expr(rng, algebra, 2, 2) for _ in range(3))
        jac = commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) \
            + commutator(z, commutator(x, y))
        if not jac.is_zero():
            failures.append(f"Jacobi sample {i}")
        if adjoint(adjoint(x)) != x:
            failures.append(f"adjoint involution sample {i}")
        if commutator(x, y) != -commutator(y, x):
            failures.append(f"antisymmetry sample {i}")
    return failures


def hermiticity_failures(order: int = 6) -> list[str]:
    failures = []
    for problem in (stark_problem(order), zeeman_problem(order)):
        series = iterate(problem)
        for n in range(1, order + 1):
            if adjoint(series.W(n)) != series.W(n):
                failures.append(f"{problem.name} W_{n} not Hermitian")
            if adjoint(series.G(n)) != -series.G(n):
                failures.append(f"{problem.name} G_{n} not anti-Hermitian")
    return failures


# -- closed forms ---------------------------------------------------------------


def binomial_half(j: int) -> Fraction:
    """Generalized binomial coefficient C(1/2, j)."""
    out = Fraction(1)
    for k in range(j):
        out *= (Fraction(1, 2) - k) / (k + 1)
    return out


def stark_goldens(order: int = 6) -> list[Outcome]:
    s = iterate(stark_problem(order))
    shift = OperatorExpr.identity(HW, Scalar.monomial(Fraction(-1, 2), e=2, field=2, m=-1, omega0=-2))
    # -(e E / hbar omega0) sqrt(hbar / 2 m omega0) (a† - a)
    g_amp = Scalar.monomial(-1, e=1, field=1, hbar=Fraction(-1, 2), m=Fraction(-1, 2),
                            omega0=Fraction(-3, 2), **{"2": Fraction(-1, 2)})
    g_expected = (op("a†") - op("a")).scale(g_amp)
    # (i/hbar)(e E / m omega0^2) p,  p = i sqrt(hbar m omega0 / 2) (a† - a)
    p_hat = (op("a†") - op("a")).scale(
        Scalar.monomial(GaussianRational(0, 1), hbar=Fraction(1, 2), m=Fraction(1, 2),
                        omega0=Fraction(1, 2), **{"2": Fraction(-1, 2)}))
    g_momentum = p_hat.scale(Scalar.monomial(GaussianRational(0, 1), hbar=-1, e=1, field=1, m=-1, omega0=-2))
    zero = OperatorExpr.zero(HW)
    out = [
        compare("stark W = -(1/2) m (eE/m omega0)^2", shift, s.w_total()),
        compare("stark W_1 = 0", zero, s.W(1)),
        compare("stark G_2 = 0", zero, s.G(2)),
        compare("G_stark ∝ (a†-a)", g_expected, s.g_total()),
        compare("stark G = (i/hbar)(eE/m omega0^2) p", g_momentum, s.g_total()),
    ]
    out += [compare(f"stark A_{n} = 0", zero, s.A(n)) for n in range(3, order + 1)]
    return out


def zeeman_goldens(order: int = 6) -> list[Outcome]:
    s = iterate(zeeman_problem(order))
    v = s.problem.v
    l0 = op("L0")
    k = lambda p, c: Scalar.monomial(c, kappa=p)  # noqa: E731
    zero = OperatorExpr.zero(SU2)
    g1 = (op("L+", Scalar.param("u")) - op("L-", Scalar.param("u_conj"))).scale(
        Scalar.monomial(Fraction(1, 2), hbar=-1, kappa=-1))
    out = [
        compare("zeeman G_1 = (1/2 hbar kappa)(u L+ - u* L-)", g1, s.G(1)),
        compare("zeeman A_2 = L0/2kappa", l0.scale(k(-1, Fraction(1, 2))), s.A(2)),
        compare("zeeman W_2 = L0/2kappa", l0.scale(k(-1, Fraction(1, 2))), s.W(2)),
        compare("zeeman G_2 = 0", zero, s.G(2)),
        compare("zeeman A_3 = -V/3kappa^2", v.scale(k(-2, Fraction(-1, 3))), s.A(3)),
        compare("zeeman W_3 = 0", zero, s.W(3)),
        compare("zeeman G_3 = -G_1/3kappa^2", g1.scale(k(-2, Fraction(-1, 3))), s.G(3)),
        compare("zeeman A_4 = -L0/8kappa^3", l0.scale(k(-3, Fraction(-1, 8))), s.A(4)),
        compare("zeeman W_4 = -L0/8kappa^3", l0.scale(k(-3, Fraction(-1, 8))), s.W(4)),
        compare("zeeman G_4 = 0", zero, s.G(4)),
    ]
    for j in range(1, order // 2 + 1):
        expected = l0.scale(k(1 - 2 * j, binomial_half(j)))
        out.append(compare(f"zeeman W_{2 * j} = binomial series term", expected, s.W(2 * j)))
    for n in range(1, order + 1, 2):
        out.append(compare(f"zeeman W_{n} = 0", zero, s.W(n)))
    return out


# -- oracle -----------------------------------------------------------------------


def homomorphism_check(x: OperatorExpr, y: OperatorExpr, basis: BasisSpec,
                       values=None, name: str = "homomorphism") -> Outcome:
    """``rep(x y) == rep(x) rep(y)`` exactly, on the block safe from truncation."""
    prod = x * y
    if not all(truncation_ok(e, basis) for e in (x, y, prod)):
        return Outcome(name, SKIP, f"max ladder power exceeds N/4 for N={basis.size}")
    vals = values or {"hbar": Fraction(1)}
    lhs = exact_matrix_rep(prod, basis, vals)
    rhs = exact_matmul(exact_matrix_rep(x, basis, vals), exact_matrix_rep(y, basis, vals))
    b = basis.dim if basis.algebra == SU2 else basis.dim - x.max_power() - y.max_power()
    ok = all(lhs[i, j] == rhs[i, j] for i in range(b) for j in range(b))
    return Outcome(name, PASS if ok else FAIL)


def zeeman_energy_errors(l: int, kappa: float, order: int) -> list[tuple[int, float, float]]:
    """``(m, perturbative, exact eigenvalue)`` for every m != 0, ħ = 1."""
    problem = zeeman_problem(order)
    series = iterate(problem)
    vals = {"hbar": 1.0, "kappa": kappa, "u": 1.0, "eps_R": 0.0, "alpha_r2": 0.0}
    basis = BasisSpec.su2(l)
    exact = eigenvalues_hermitian(hamiltonian_matrix(problem, basis, vals))
    # exact eigenvalues ascend with m since kappa > 0
    states = [StateLabel(l=l, m=m) for m in range(-l, l + 1)]
    rows = evaluate_spectrum(series, states, vals)
    return [(r.state.m, r.energy, e) for r, e in zip(rows, exact) if r.state.m != 0]


def oracle_outcomes(samples: int = 20, seed: int = 2) -> list[Outcome]:
    out = []
    rng = random.Random(seed)
    for algebra, basis in ((HW, BasisSpec.hw(16)), (SU2, BasisSpec.su2(3))):
        fails = 0
        for _ in range(samples):
            x = random_expr(rng, algebra, 2, 2, with_params=False)
            y = random_expr(rng, algebra, 2, 2, with_params=False)
            res = homomorphism_check(x, y, basis)
            fails += res.status == FAIL
        out.append(Outcome(f"{algebra} matrix homomorphism ({samples} pairs)",
                           PASS if not fails else FAIL, f"{fails} failures" if fails else ""))

    worst = 0.0
    for l in (1, 2, 3):
        for kappa in (2.0, 5.0, 10.0):
            for order in (2, 4, 6):
                for m, pert, exact in zeeman_energy_errors(l, kappa, order):
                    worst = max(worst, abs(pert - exact) / abs(exact) / (2 * kappa ** -(order + 1)))
    out.append(Outcome("zeeman energies vs exact diagonalization",
                       PASS if worst <= 1 else FAIL, f"worst error/bound = {worst:.3f}"))

    stark = stark_problem(2)
    vals = {"hbar": 1.0, "m": 1.0, "omega0": 1.0, "e": 1.0, "field": 0.05}
    ground = eigenvalues_hermitian(hamiltonian_matrix(stark, BasisSpec.hw(60), vals))[0]
    err = abs((ground - 0.5) - (-0.05**2 / 2))
    out.append(Outcome("stark ground-state shift (N=60)", PASS if err <= 1e-8 else FAIL,
                       f"|error| = {err:.2e}"))

    rep = similarity_check(iterate(zeeman_problem(4)), BasisSpec.su2(1),
                           {"hbar": 1.0, "kappa": 10.0, "u": 1.0, "eps_R": 0.0, "alpha_r2": 0.0}, 4)
    out.append(Outcome("zeeman similarity residual ~ λ^5", PASS if abs(rep.exponent - 5) <= 0.3 else FAIL,
                       f"exponent {rep.exponent:.3f}"))
    rep = similarity_check(iterate(stark_problem(2)), BasisSpec.hw(60), vals, 2, strengths=(1.0,))
    out.append(Outcome("stark order-2 similarity closure", PASS if rep.residuals[0] <= 1e-10 else FAIL,
                       f"residual {rep.residuals[0]:.2e}"))
    return out


# -- driver -------------------------------------------------------------------------


def _as_outcome(name: str, failures: list[str]) -> Outcome:
    if not failures:
        return Outcome(name, PASS)
    return Outcome(name, FAIL, f"{len(failures)} failures; first: {failures[0]}")


def run_checks(scopes: Iterable[str] = SCOPES, samples: int = 1000) -> list[Outcome]:
    scopes = list(scopes)
    out: list[Outcome] = []
    if "superops" in scopes:
        for alg in (HW, SU2):
            out.append(_as_outcome(f"{alg} superoperator identities ({samples} monomials)",
                                   superop_failures(alg, samples)))
    if "structure" in scopes:
        for alg in (HW, SU2):
            out.append(_as_outcome(f"{alg} Jacobi/adjoint/antisymmetry",
                                   jacobi_failures(alg, max(samples // 50, 10))))
        out.append(_as_outcome("W_n Hermitian, G_n anti-Hermitian to order 6",
                               hermiticity_failures(6)))
    if "goldens" in scopes:
        out += stark_goldens() + zeeman_goldens()
    if "oracle" in scopes:
        out += oracle_outcomes()
    return out


def report(outcomes: list[Outcome], emit: Callable[[str], None] = print) -> bool:
    for o in outcomes:
        emit(o.line())
    failed = [o for o in outcomes if o.status == FAIL]
    emit(f"{len(outcomes) - len(failed)}/{len(outcomes)} checks passed or skipped"
         f"{'' if not failed else f', {len(failed)} failed'}")
    return not failed
