"""Normal-ordered operator expressions over a ladder algebra.

Two algebras are supported:

``hw``
    Heisenberg-Weyl: ``a``, ``a†`` with ``[a, a†] = 1``.  A monomial
    ``(m, n)`` is ``a†^m a^n``.
``su2``
    Angular momentum in the spherical basis: ``L+``, ``L0``, ``L-`` with
    ``[L0, L±] = ±ħ L±`` and ``[L+, L-] = 2ħ L0``.  A monomial ``(m, p, n)``
    is ``L+^m L0^p L-^n``.  ``ħ`` is the parameter ``hbar``.

Everything commuting with the whole algebra (identity, ``L²``, radial
constants) lives in the :class:`~ladderpt.scalars.Scalar` coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .scalars import Scalar

HW = "hw"
SU2 = "su2"
ALGEBRAS = (HW, SU2)
HBAR = "hbar"

_HBAR = Scalar.param(HBAR)


class AlgebraMismatchError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Monomial:
    algebra: str
    powers: tuple[int, ...]

    def __post_init__(self):
        want = 2 if self.algebra == HW else 3 if self.algebra == SU2 else None
        if want is None:
            raise ValueError(f"unknown algebra {self.algebra!r}")
        if len(self.powers) != want or any(p < 0 for p in self.powers):
            raise ValueError(f"bad powers {self.powers} for algebra {self.algebra}")

    @classmethod
    def identity(cls, algebra: str) -> "Monomial":
        return cls(algebra, (0,) * (2 if algebra == HW else 3))

    @property
    def raising(self) -> int:
        return self.powers[0]

    @property
    def lowering(self) -> int:
        return self.powers[-1]

    @property
    def is_diagonal(self) -> bool:
        return self.powers[0] == self.powers[-1]

    @property
    def degree(self) -> int:
        return sum(self.powers)

    def dagger(self) -> "Monomial":
        # (a†^m a^n)† = a†^n a^m and (L+^m L0^p L-^n)† = L+^n L0^p L-^m,
        # both already normal ordered.
        p = self.powers
        return Monomial(self.algebra, (p[-1],) + p[1:-1] + (p[0],))


# generator name -> (algebra, powers)
GENERATORS: dict[str, tuple[str, tuple[int, ...]]] = {
    "a": (HW, (0, 1)),
    "a†": (HW, (1, 0)),
    "adag": (HW, (1, 0)),
    "a+": (HW, (1, 0)),
    "L+": (SU2, (1, 0, 0)),
    "L0": (SU2, (0, 1, 0)),
    "Lz": (SU2, (0, 1, 0)),
    "L-": (SU2, (0, 0, 1)),
}


def generator_monomial(symbol: str) -> Monomial:
    try:
        algebra, powers = GENERATORS[symbol]
    except KeyError:
        raise ValueError(f"unknown generator {symbol!r}") from None
    return Monomial(algebra, powers)


# -- monomial products --------------------------------------------------------


@lru_cache(maxsize=None)
def _hw_product(left: tuple[int, int], right: tuple[int, int]) -> tuple:
    # a^n a†^k = sum_j C(n,j) C(k,j) j! a†^(k-j) a^(n-j)
    m, n = left
    k, l = right
    out = []
    for j in range(min(n, k) + 1):
        c = comb(n, j) * comb(k, j) * factorial(j)
        out.append(((m + k - j, n + l - j), Scalar.const(c)))
    return tuple(out)


def _su2_times(state: dict, gen: str) -> dict:
    """Right-multiply a normal-ordered su(2) polynomial by one generator.

    ``state`` maps ``(m, p, n)`` to a dict ``{hbar power: int coefficient}``.
    """
    out: dict = {}

    def add(key, hpow, c):
        if c == 0:
            return
        slot = out.setdefault(key, {})
        slot[hpow] = slot.get(hpow, 0) + c
        if slot[hpow] == 0:
            del slot[hpow]
            if not slot:
                del out[key]

    for (m, p, n), poly in state.items():
        for h, c in poly.items():
            if gen == "L-":
                add((m, p, n + 1), h, c)
            elif gen == "L0":
                # L-^n L0 = (L0 + n hbar) L-^n
                add((m, p + 1, n), h, c)
                add((m, p, n), h + 1, n * c)
            else:
                # L0^p L+ = L+ (L0 + hbar)^p
                for j in range(p + 1):
                    add((m + 1, j, n), h + p - j, comb(p, j) * c)
                # [L-^n, L+] = (-2n hbar L0 - n(n-1) hbar^2) L-^(n-1)
                if n:
                    add((m, p + 1, n - 1), h + 1, -2 * n * c)
                    add((m, p, n - 1), h + 2, -n * (n - 1) * c)
    return out


@lru_cache(maxsize=None)
def _su2_product(left: tuple[int, int, int], right: tuple[int, int, int]) -> tuple:
    state = {left: {0: 1}}
    q, r, s = right
    for gen, count in (("L+", q), ("L0", r), ("L-", s)):
        for _ in range(count):
            state = _su2_times(state, gen)
    out = []
    for key, poly in state.items():
        coeff = Scalar()
        for h, c in poly.items():
            coeff = coeff + Scalar.const(c) * _HBAR**h
        out.append((key, coeff))
    return tuple(out)


def monomial_product(left: Monomial, right: Monomial) -> list[tuple[Monomial, Scalar]]:
    if left.algebra != right.algebra:
        raise AlgebraMismatchError(f"{left.algebra} vs {right.algebra}")
    fn = _hw_product if left.algebra == HW else _su2_product
    return [(Monomial(left.algebra, k), c) for k, c in fn(left.powers, right.powers)]


# -- expressions --------------------------------------------------------------


class OperatorExpr:
    """Finite sum of ``Scalar * Monomial`` in canonical (normal-ordered) form.

    Terms with equal monomials are merged and zero terms dropped on
    construction, so ``==`` is mathematical equality.  Iteration order is by
    monomial power tuple.
    """

    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: str, terms: Mapping | Iterable = ()):
        if algebra not in ALGEBRAS:
            raise ValueError(f"unknown algebra {algebra!r}")
        acc: dict[Monomial, Scalar] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coeff in items:
            if mono.algebra != algebra:
                raise AlgebraMismatchError(f"{mono.algebra} term in {algebra} expression")
            if not isinstance(coeff, Scalar):
                coeff = Scalar.const(coeff)
            acc[mono] = acc[mono] + coeff if mono in acc else coeff
        self.algebra = algebra
        self._terms = tuple(sorted((m, c) for m, c in acc.items() if c))
        self._hash = None

    @classmethod
    def zero(cls, algebra: str) -> "OperatorExpr":
        return cls(algebra)

    @classmethod
    def identity(cls, algebra: str, coeff=1) -> "OperatorExpr":
        return cls(algebra, [(Monomial.identity(algebra), coeff)])

    @classmethod
    def term(cls, coeff, monomial: Monomial) -> "OperatorExpr":
        return cls(monomial.algebra, [(monomial, coeff)])

    @property
    def terms(self) -> tuple[tuple[Monomial, Scalar], ...]:
        return self._terms

    def coefficient(self, monomial: Monomial) -> Scalar:
        for m, c in self._terms:
            if m == monomial:
                return c
        return Scalar()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def max_power(self) -> int:
        return max((max(m.powers) for m, _ in self._terms), default=0)

    def params(self) -> set[str]:
        return set().union(*(c.params() for _, c in self._terms)) if self._terms else set()

    def _check(self, other: "OperatorExpr"):
        if not isinstance(other, OperatorExpr):
            raise TypeError(f"expected OperatorExpr, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise AlgebraMismatchError(f"{self.algebra} vs {other.algebra}")

    def __add__(self, other):
        self._check(other)
        return OperatorExpr(self.algebra, list(self._terms) + list(other._terms))

    def __neg__(self):
        return OperatorExpr(self.algebra, [(m, -c) for m, c in self._terms])

    def __sub__(self, other):
        self._check(other)
        return self + (-other)

    def scale(self, s) -> "OperatorExpr":
        if not isinstance(s, Scalar):
            s = Scalar.const(s)
        return OperatorExpr(self.algebra, [(m, c * s) for m, c in self._terms])

    def __mul__(self, other):
        if isinstance(other, OperatorExpr):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def map_terms(self, fn) -> "OperatorExpr":
        """Apply ``fn(monomial, scalar) -> scalar`` term-wise."""
        return OperatorExpr(self.algebra, [(m, fn(m, c)) for m, c in self._terms])

    def __eq__(self, other):
        if not isinstance(other, OperatorExpr):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.algebra, self._terms))
        return self._hash

    def __repr__(self):
        return f"OperatorExpr({self.algebra!r}, {self.to_text()!r})"

    def to_text(self) -> str:
        from .render import expr_text

        return expr_text(self)


# -- operations ---------------------------------------------------------------


def normal_order(word: Sequence[str], coeff=1) -> OperatorExpr:
    """Canonical form of ``coeff * g1 g2 ... gk`` for generator symbols ``gi``."""
    monos = [generator_monomial(g) for g in word]
    algebras = {m.algebra for m in monos}
    if len(algebras) > 1:
        raise AlgebraMismatchError(f"mixed-algebra word {list(word)}")
    if not monos:
        raise ValueError("empty word needs an algebra; use OperatorExpr.identity")
    out = OperatorExpr.identity(monos[0].algebra, coeff)
    for m in monos:
        out = multiply(out, OperatorExpr.term(1, m))
    return out


def multiply(lhs: OperatorExpr, rhs: OperatorExpr) -> OperatorExpr:
    lhs._check(rhs)
    out = []
    for m1, c1 in lhs.terms:
        for m2, c2 in rhs.terms:
            c12 = c1 * c2
            for m, c in monomial_product(m1, m2):
                out.append((m, c12 * c))
    return OperatorExpr(lhs.algebra, out)


def commutator(lhs: OperatorExpr, rhs: OperatorExpr) -> OperatorExpr:
    return multiply(lhs, rhs) - multiply(rhs, lhs)


def adjoint(expr: OperatorExpr) -> OperatorExpr:
    return OperatorExpr(expr.algebra, [(m.dagger(), c.conjugate()) for m, c in expr.terms])


def simplify(expr: OperatorExpr) -> OperatorExpr:
    # Construction already canonicalizes; rebuilding is the idempotent no-op
    # that re-merges terms and re-applies u*u_conj -> 1 in every coefficient.
    return OperatorExpr(
        expr.algebra, [(m, Scalar(c.terms)) for m, c in expr.terms]
    )


def is_hermitian(expr: OperatorExpr) -> bool:
    return adjoint(expr) == expr


def is_antihermitian(expr: OperatorExpr) -> bool:
    return adjoint(expr) == -expr


# -- convenience constructors -------------------------------------------------


def op(symbol: str, coeff=1) -> OperatorExpr:
    return OperatorExpr.term(coeff, generator_monomial(symbol))


def hw(m: int, n: int, coeff=1) -> OperatorExpr:
    return OperatorExpr.term(coeff, Monomial(HW, (m, n)))


def su2(m: int, p: int, n: int, coeff=1) -> OperatorExpr:
    return OperatorExpr.term(coeff, Monomial(SU2, (m, p, n)))
