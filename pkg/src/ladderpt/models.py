"""Preset problems and numeric energies from a solved series.

Parameter names used by the presets:

======== ===================================== ==========
name     meaning                               preset
======== ===================================== ==========
hbar     reduced Planck constant               both
m        oscillator mass                       stark
omega0   oscillator angular frequency          stark
e        particle charge                       stark
field    electric field strength               stark
kappa    axial field coupling (``κ L_z``)      zeeman
u        ``a + i b``, unit modulus             zeeman
u_conj   complex conjugate of ``u``            zeeman
eps_R    radial energy (opaque constant)       zeeman
alpha_r2 ``<α/r²>`` (opaque constant)          zeeman
L2       ``L²``, central, ``l(l+1)ħ²``         zeeman
======== ===================================== ==========
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import HBAR, HW, SU2, Monomial, OperatorExpr, op
from .engine import PerturbationProblem, SeriesResult
from .scalars import GaussianRational, MissingParameterError, Scalar
from .superops import GapSpec, pi_project

KNOWN_PARAMS = frozenset(
    ["hbar", "m", "omega0", "e", "field", "kappa", "u", "u_conj", "eps_R", "alpha_r2", "L2"]
)
CENTRAL_L2 = "L2"
POSITIVE_PARAMS = ("hbar", "m", "omega0", "kappa")


@dataclass(frozen=True)
class StateLabel:
    """``n`` for the oscillator, ``(l, m)`` for angular momentum."""

    n: int | None = None
    l: int | None = None
    m: int | None = None

    def __post_init__(self):
        if self.n is not None:
            if self.l is not None or self.m is not None or self.n < 0:
                raise ValueError(f"bad oscillator state {self}")
        else:
            if self.l is None or self.m is None or self.l < 0 or abs(self.m) > self.l:
                raise ValueError(f"bad angular momentum state l={self.l}, m={self.m}")

    @property
    def algebra(self) -> str:
        return HW if self.n is not None else SU2

    @classmethod
    def parse(cls, text: str) -> "StateLabel":
        text = text.strip()
        if ":" in text:
            l, m = text.split(":")
            return cls(l=int(l), m=int(m))
        return cls(n=int(text))

    def __str__(self):
        return str(self.n) if self.n is not None else f"{self.l}:{self.m}"


def stark_problem(max_order: int) -> PerturbationProblem:
    """Charged oscillator in a uniform field, ``V = -e 𝓔 q``."""
    # q = sqrt(hbar / (2 m omega0)) (a† + a)
    amp = Scalar.monomial(-1, e=1, field=1, hbar=Fraction(1, 2), m=Fraction(-1, 2),
                          omega0=Fraction(-1, 2), **{"2": Fraction(-1, 2)})
    v = op("a†", amp) + op("a", amp)
    gap = GapSpec(HW, Scalar.monomial(1, hbar=1, omega0=1))
    central = Scalar.monomial(Fraction(1, 2), hbar=1, omega0=1)
    return PerturbationProblem(HW, gap, central, v, max_order, name="stark")


def zeeman_problem(max_order: int) -> PerturbationProblem:
    """Axial field ``κ L_z`` plus transverse ``V = a L_x + b L_y``, ``u = a + i b``."""
    half = Fraction(1, 2)
    v = op("L+", Scalar.monomial(half, u=1)) + op("L-", Scalar.monomial(half, u_conj=1))
    gap = GapSpec(SU2, Scalar.monomial(1, hbar=1, kappa=1))
    central = Scalar.param("eps_R") + Scalar.monomial(1, alpha_r2=1, L2=1)
    return PerturbationProblem(SU2, gap, central, v, max_order, name="zeeman")


PRESETS = {"stark": stark_problem, "zeeman": zeeman_problem}


def preset(name: str, max_order: int) -> PerturbationProblem:
    try:
        return PRESETS[name](max_order)
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def check_values(values: Mapping[str, complex]) -> dict:
    """Validate numeric parameter values and fill in ``u_conj``."""
    out = dict(values)
    for name in POSITIVE_PARAMS:
        if name in out and not (complex(out[name]).imag == 0 and complex(out[name]).real > 0):
            raise ValueError(f"parameter {name} must be positive, got {out[name]}")
    if "u" in out:
        if abs(abs(complex(out["u"])) - 1) > 1e-12:
            raise ValueError(f"|u| must be 1, got {abs(complex(out['u']))}")
        out.setdefault("u_conj", complex(out["u"]).conjugate())
    return out


def _state_values(state: StateLabel, values: Mapping) -> dict:
    vals = dict(values)
    if state.algebra == SU2 and CENTRAL_L2 not in vals and HBAR in vals:
        vals[CENTRAL_L2] = state.l * (state.l + 1) * vals[HBAR] ** 2
    return vals


def monomial_expectation(mono: Monomial, state: StateLabel, hbar=1):
    """``<state| mono |state>`` for a diagonal monomial (exact if inputs are)."""
    if not mono.is_diagonal:
        raise ValueError(f"monomial {mono.powers} is not diagonal")
    if mono.algebra == HW:
        k = mono.raising
        n = state.n
        return math.perm(n, k) if k <= n else 0
    k, p, _ = mono.powers
    l, m = state.l, state.m
    prod = 1
    for j in range(k):
        prod *= hbar**2 * (l * (l + 1) - (m - j) * (m - j - 1))
    return ((m - k) * hbar) ** p * prod


def diagonal_expectation(expr: OperatorExpr, state: StateLabel, values: Mapping,
                         exact: bool = False):
    """``<state| expr |state>`` for an expression with ``Π(expr) = expr``.

    With ``exact=True`` the values must be rationals and the result is a
    :class:`GaussianRational`; otherwise a complex float.
    """
    if pi_project(expr) != expr:
        raise ValueError("expression is not diagonal (Pi(expr) != expr)")
    if state.algebra != expr.algebra and not expr.is_zero():
        raise ValueError(f"state {state} does not belong to algebra {expr.algebra}")
    vals = _state_values(state, values)
    total = GaussianRational(0) if exact else 0j
    for mono, coeff in expr.terms:
        if exact:
            hbar = vals.get(HBAR, 1) if mono.algebra == SU2 else 1
            if mono.algebra == SU2 and HBAR not in vals and mono.degree:
                raise MissingParameterError(HBAR)
            total = total + coeff.evaluate_exact(vals) * monomial_expectation(mono, state, hbar)
        else:
            hbar = complex(vals[HBAR]).real if mono.algebra == SU2 and mono.degree else 1
            total += coeff.evaluate(vals) * monomial_expectation(mono, state, hbar)
    return total


def zero_order_energy(problem: PerturbationProblem, state: StateLabel, values: Mapping) -> complex:
    vals = _state_values(state, values)
    gap = problem.gap.gap_constant.evaluate(vals)
    quanta = state.n if problem.algebra == HW else state.m
    return quanta * gap + problem.h0_central.evaluate(vals)


@dataclass(frozen=True)
class SpectrumRow:
    state: StateLabel
    e0: float
    corrections: tuple[float, ...]
    energy: float


def _real(z: complex, what: str) -> float:
    if abs(z.imag) > 1e-9 * max(1.0, abs(z.real)):
        raise ValueError(f"{what} is not real: {z}")
    return z.real


def evaluate_spectrum(series: SeriesResult, states: Sequence[StateLabel],
                      values: Mapping) -> list[SpectrumRow]:
    problem = series.problem
    vals = check_values(values)
    rows = []
    for state in states:
        if state.algebra != problem.algebra:
            raise ValueError(f"state {state} does not match algebra {problem.algebra}")
        e0 = _real(zero_order_energy(problem, state, vals), "zero-order energy")
        corr = tuple(
            _real(diagonal_expectation(w, state, vals), f"W_{n} expectation")
            for n, w in enumerate(series.w, start=1)
        )
        rows.append(SpectrumRow(state, e0, corr, e0 + sum(corr)))
    return rows
