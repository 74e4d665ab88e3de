"""Algebraic operator perturbation theory on ladder-operator algebras.

Exact symbolic solution of the canonical (Van Vleck) perturbation equations
for Hamiltonians built from the Heisenberg-Weyl algebra ``{a, a†}`` or
su(2) ``{L+, L0, L-}``, with matrix-representation oracles for checking.
"""

from .algebra import HW, SU2, OperatorExpr, commutator, multiply, normal_order, op
from .engine import PerturbationProblem, SeriesResult, iterate
from .models import StateLabel, evaluate_spectrum, preset, stark_problem, zeeman_problem
from .scalars import GaussianRational, Scalar
from .superops import GapSpec, gamma, gamma_inverse, pi_project

__all__ = [
    "HW", "SU2", "OperatorExpr", "commutator", "multiply", "normal_order", "op",
    "PerturbationProblem", "SeriesResult", "iterate",
    "StateLabel", "evaluate_spectrum", "preset", "stark_problem", "zeeman_problem",
    "GaussianRational", "Scalar",
    "GapSpec", "gamma", "gamma_inverse", "pi_project",
]
