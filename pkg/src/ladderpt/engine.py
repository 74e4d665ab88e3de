"""Order-by-order solution of the canonical perturbation equations.

With ``G = sum_k G_k`` the transformed Hamiltonian ``exp(ad_G)(H0 + V)`` is
collected by order.  Everything at order ``n`` except the single term
``[G_n, H0] = -Γ(G_n)`` forms ``A_n``; requiring the order-``n`` part to be
diagonal then fixes

    W_n = Π(A_n),        G_n = Γ⁻¹(A_n - Π(A_n)).

A box term ``(n1, ..., nk | target)`` is the weighted nested commutator
``(1/k!) [G_n1, [G_n2, ... [G_nk, target]]]`` with target ``V`` when
``sum(ni) = n - 1`` and ``H0`` when ``sum(ni) = n``.  ``H0`` itself never
appears: the innermost ``[G_m, H0]`` is always replaced by ``-Γ(G_m)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import superops
from .algebra import OperatorExpr, adjoint, commutator
from .scalars import Scalar
from .superops import GapSpec

log = logging.getLogger(__name__)

H0 = "H0"
V = "V"


class ProblemError(ValueError):
    """A perturbation problem violates one of its construction invariants."""


@dataclass(frozen=True)
class PerturbationProblem:
    algebra: str
    gap: GapSpec
    h0_central: Scalar
    v: OperatorExpr
    max_order: int
    name: str = "custom"

    def __post_init__(self):
        if self.max_order < 1:
            raise ProblemError("max_order must be >= 1")
        if self.gap.algebra != self.algebra or self.v.algebra != self.algebra:
            raise ProblemError("gap, perturbation and problem must share one algebra")
        if adjoint(self.v) != self.v:
            raise ProblemError("perturbation V is not Hermitian (adjoint(V) != V)")
        if superops.pi_project(self.v):
            raise ProblemError("perturbation V has a diagonal part (Pi(V) != 0)")

    def with_order(self, max_order: int) -> "PerturbationProblem":
        return PerturbationProblem(
            self.algebra, self.gap, self.h0_central, self.v, max_order, self.name
        )


@dataclass(frozen=True)
class BoxTerm:
    indices: tuple[int, ...]
    target: str
    weight: Fraction

    def __str__(self):
        idx = ",".join(map(str, self.indices))
        return f"({idx}|{1 if self.target == V else 0})"


def _compositions(total: int):
    """Ordered compositions of ``total`` into positive parts, by length then lex."""
    if total == 0:
        return [()]
    out = []

    def rec(rest, prefix):
        if rest == 0:
            out.append(prefix)
            return
        for first in range(1, rest + 1):
            rec(rest - first, prefix + (first,))

    rec(total, ())
    return sorted(out, key=lambda c: (len(c), c))


def box_terms(order: int) -> list[BoxTerm]:
    if order < 1:
        raise ValueError("order must be >= 1")
    out = [BoxTerm(c, V, Fraction(1, factorial(len(c)))) for c in _compositions(order - 1)]
    out += [
        BoxTerm(c, H0, Fraction(1, factorial(len(c))))
        for c in _compositions(order)
        if len(c) >= 2
    ]
    return out


def _nested(indices, target, g, problem, cache):
    key = (indices, target)
    if key in cache:
        return cache[key]
    if target == V and not indices:
        val = problem.v
    elif target == H0 and len(indices) == 1:
        val = -superops.gamma(g[indices[0]], problem.gap)
    else:
        inner = _nested(indices[1:], target, g, problem, cache)
        outer = g[indices[0]]
        if outer.is_zero() or inner.is_zero():
            val = OperatorExpr.zero(problem.algebra)
        else:
            val = commutator(outer, inner)
    cache[key] = val
    return val


def assemble_A(order: int, prior: dict[int, OperatorExpr], problem: PerturbationProblem,
               cache: dict | None = None) -> OperatorExpr:
    """Order-``order`` operator from the generators ``prior[1..order-1]``."""
    if cache is None:
        cache = {}
    total = OperatorExpr.zero(problem.algebra)
    for box in box_terms(order):
        if any(prior[i].is_zero() for i in box.indices):
            continue
        term = _nested(box.indices, box.target, prior, problem, cache)
        if term:
            total = total + term.scale(box.weight)
    return total


@dataclass
class SeriesResult:
    problem: PerturbationProblem
    a: list[OperatorExpr] = field(default_factory=list)
    w: list[OperatorExpr] = field(default_factory=list)
    g: list[OperatorExpr] = field(default_factory=list)

    @property
    def max_order(self) -> int:
        return len(self.a)

    @property
    def zero_orders(self) -> list[int]:
        return [n for n, a in enumerate(self.a, start=1) if a.is_zero()]

    def A(self, n: int) -> OperatorExpr:
        return self.a[n - 1]

    def W(self, n: int) -> OperatorExpr:
        return self.w[n - 1]

    def G(self, n: int) -> OperatorExpr:
        return self.g[n - 1]

    def w_total(self, upto: int | None = None) -> OperatorExpr:
        return _sum(self.w[: upto or len(self.w)], self.problem.algebra)

    def g_total(self, upto: int | None = None) -> OperatorExpr:
        return _sum(self.g[: upto or len(self.g)], self.problem.algebra)


def _sum(exprs, algebra):
    out = OperatorExpr.zero(algebra)
    for e in exprs:
        out = out + e
    return out


def iterate(problem: PerturbationProblem) -> SeriesResult:
    result = SeriesResult(problem)
    g: dict[int, OperatorExpr] = {}
    cache: dict = {}
    for n in range(1, problem.max_order + 1):
        a_n = assemble_A(n, g, problem, cache)
        w_n = superops.pi_project(a_n)
        g_n = superops.gamma_inverse(a_n - w_n, problem.gap)
        g[n] = g_n
        result.a.append(a_n)
        result.w.append(w_n)
        result.g.append(g_n)
        log.debug("order %d: %d terms in A, zero=%s", n, len(a_n), a_n.is_zero())
    return result
