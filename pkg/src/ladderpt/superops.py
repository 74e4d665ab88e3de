"""Parallel projection, derivation and its inverse on ladder monomials.

All three act term-wise on normal-ordered monomials and only look at the
raising power ``m`` and lowering power ``n``:

* ``pi_project`` keeps ``m == n`` terms,
* ``gamma`` multiplies by ``(m - n) * gap``,
* ``gamma_inverse`` divides by ``(m - n) * gap`` and sends ``m == n`` to zero.

The su(2) ``L0`` power never enters, which is what makes the realization
independent of the angular quantum number ``l``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import HBAR, HW, SU2, OperatorExpr, op
from .scalars import Scalar


@dataclass(frozen=True)
class GapSpec:
    """Uniform level spacing of the unperturbed grading operator.

    ``gap_constant`` is ``ħω₀`` for the oscillator and ``ħκ`` for su(2).
    """

    algebra: str
    gap_constant: Scalar

    def __post_init__(self):
        if self.algebra not in (HW, SU2):
            raise ValueError(f"unknown algebra {self.algebra!r}")
        if not self.gap_constant.is_monomial():
            raise ValueError("gap constant must be a single nonzero parameter monomial")

    def generator(self) -> OperatorExpr:
        """Operator whose commutator realizes ``gamma``."""
        if self.algebra == HW:
            return op("a†") * op("a") * self.gap_constant
        return op("L0") * (self.gap_constant / Scalar.param(HBAR))


def pi_project(expr: OperatorExpr) -> OperatorExpr:
    return OperatorExpr(expr.algebra, [(m, c) for m, c in expr.terms if m.is_diagonal])


def gamma(expr: OperatorExpr, gap: GapSpec) -> OperatorExpr:
    g = gap.gap_constant
    return expr.map_terms(lambda m, c: c * g * (m.raising - m.lowering))


def gamma_inverse(expr: OperatorExpr, gap: GapSpec) -> OperatorExpr:
    inv = gap.gap_constant.inverse()
    return OperatorExpr(
        expr.algebra,
        [
            (m, c * inv / (m.raising - m.lowering))
            for m, c in expr.terms
            if not m.is_diagonal
        ],
    )
