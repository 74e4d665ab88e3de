"""Exact c-number arithmetic.

A :class:`Scalar` is a finite sum of terms ``c * p1^e1 * p2^e2 * ...`` where
``c`` is a Gaussian rational and the ``e`` are rational exponents.  Parameter
names are plain strings.  Names made only of digits are integer radicals
(``"2"`` with exponent ``-1/2`` is ``1/sqrt(2)``); they are kept in prime-factor
form with exponents in ``[0, 1)`` so that every value has one representation.

The unit-modulus phase ``u`` and its conjugate ``u_conj`` are reduced against
each other (``u * u_conj -> 1``), every other parameter is treated as a
positive real.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping

__all__ = [
    "GaussianRational",
    "Scalar",
    "MissingParameterError",
    "PHASE",
    "PHASE_CONJ",
    "as_fraction",
]

_ZERO = Fraction(0)

PHASE = "u"
PHASE_CONJ = "u_conj"


class MissingParameterError(ValueError):
    """Raised when a numeric evaluation needs a parameter that was not supplied."""

    def __init__(self, name: str):
        super().__init__(f"missing value for parameter {name!r}")
        self.name = name


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {x!r} to an exact rational")


class GaussianRational:
    """``re + i*im`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        out = object.__new__(cls)
        out.re = re
        out.im = im
        return out

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        return cls(as_fraction(x), 0)

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.im and not o.im:
            return GaussianRational._make(self.re * o.re, _ZERO)
        return GaussianRational._make(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = GaussianRational(1)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_gaussian(self)


def format_gaussian(q: GaussianRational) -> str:
    if q.im == 0:
        return str(q.re)
    im = f"{q.im}*i" if abs(q.im) != 1 else ("i" if q.im > 0 else "-i")
    if q.re == 0:
        return im
    return f"{q.re}+{im}" if q.im > 0 else f"{q.re}{im}"


class _Exp(Fraction):
    """Fraction with a cached hash; used for exponents inside parameter keys."""

    __slots__ = ("_h",)

    def __hash__(self):
        try:
            return self._h
        except AttributeError:
            self._h = Fraction.__hash__(self)
            return self._h


_EXP_CACHE: dict[Fraction, _Exp] = {}


def _exp(e: Fraction) -> _Exp:
    out = _EXP_CACHE.get(e)
    if out is None:
        out = _EXP_CACHE[e] = _Exp(e.numerator, e.denominator)
    return out


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


Key = tuple  # tuple[tuple[str, Fraction], ...], sorted by name


def _canonical_term(powers: Mapping[str, Fraction], coeff: GaussianRational):
    """Return ``(key, coeff)`` with radicals and the phase pair reduced."""
    merged: dict[str, Fraction] = {}
    for name, e in powers.items():
        e = as_fraction(e)
        if e == 0:
            continue
        if name.isdigit():
            n = int(name)
            if n == 0:
                raise ZeroDivisionError("zero radical base")
            for p, k in _factorize(n).items():
                merged[str(p)] = merged.get(str(p), Fraction(0)) + k * e
        else:
            merged[name] = merged.get(name, Fraction(0)) + e
    if PHASE in merged or PHASE_CONJ in merged:
        net = merged.pop(PHASE, Fraction(0)) - merged.pop(PHASE_CONJ, Fraction(0))
        if net > 0:
            merged[PHASE] = net
        elif net < 0:
            merged[PHASE_CONJ] = -net
    for name in [k for k in merged if k.isdigit()]:
        e = merged[name]
        whole = math.floor(e)
        if whole:
            coeff = coeff * (Fraction(int(name)) ** whole)
            e = e - whole
        merged[name] = e
    key = tuple(sorted((k, _exp(v)) for k, v in merged.items() if v != 0))
    return key, coeff


@lru_cache(maxsize=65536)
def _key_product(k1: Key, k2: Key):
    """Canonical key of a product of two canonical keys, plus any rational factor."""
    if not k1:
        return k2, None
    if not k2:
        return k1, None
    d = dict(k1)
    for name, e in k2:
        d[name] = d.get(name, _ZERO) + e
    key, factor = _canonical_term(d, GaussianRational(1))
    return key, (None if factor == 1 else factor)


class Scalar:
    """Exact sum of Gaussian-rational multiples of parameter monomials.

    Immutable; equality is structural and therefore mathematical because the
    representation is canonical.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, GaussianRational] | Iterable = ()):
        acc: dict[Key, GaussianRational] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            c = GaussianRational.coerce(c)
            if not c:
                continue
            key, c = _canonical_term(dict(key), c)
            acc[key] = acc[key] + c if key in acc else c
        self._terms = tuple(sorted((k, v) for k, v in acc.items() if v))
        self._hash = None

    @classmethod
    def _from_canonical(cls, acc: dict) -> "Scalar":
        """Build from a dict whose keys are already canonical."""
        out = object.__new__(cls)
        out._terms = tuple(sorted((k, v) for k, v in acc.items() if v))
        out._hash = None
        return out

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c=1) -> "Scalar":
        return cls({(): GaussianRational.coerce(c)})

    @classmethod
    def param(cls, name: str, exp=1) -> "Scalar":
        return cls({((name, as_fraction(exp)),): GaussianRational(1)})

    @classmethod
    def monomial(cls, coeff=1, **powers) -> "Scalar":
        key = tuple((k, as_fraction(v)) for k, v in powers.items())
        return cls({key: GaussianRational.coerce(coeff)})

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        from .parsing import parse_scalar

        return parse_scalar(text)

    # -- structure ----------------------------------------------------------

    @property
    def terms(self) -> tuple:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def params(self) -> set[str]:
        return {name for key, _ in self._terms for name, _ in key if not name.isdigit()}

    def as_constant(self) -> GaussianRational | None:
        if not self._terms:
            return GaussianRational(0)
        if len(self._terms) == 1 and self._terms[0][0] == ():
            return self._terms[0][1]
        return None

    def coefficient(self, **powers) -> GaussianRational:
        """Coefficient of one parameter monomial (zero if absent)."""
        key, scale = _canonical_term(
            {k: as_fraction(v) for k, v in powers.items()}, GaussianRational(1)
        )
        for k, c in self._terms:
            if k == key:
                return c / scale
        return GaussianRational(0)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            return other
        return Scalar.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for k, c in other._terms:
            acc[k] = acc[k] + c if k in acc else c
        return Scalar._from_canonical(acc)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._from_canonical({k: -c for k, c in self._terms})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        acc: dict = {}
        for k1, c1 in self._terms:
            for k2, c2 in other._terms:
                key, factor = _key_product(k1, k2)
                c = c1 * c2
                if factor is not None:
                    c = c * factor
                acc[key] = acc[key] + c if key in acc else c
        return Scalar._from_canonical(acc)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if len(self._terms) != 1:
            raise ZeroDivisionError("only single-term scalars are invertible")
        key, c = self._terms[0]
        return Scalar({tuple((k, -e) for k, e in key): c.inverse()})

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar.const(1)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> "Scalar":
        out = []
        for key, c in self._terms:
            swapped = tuple(
                (PHASE_CONJ if k == PHASE else PHASE if k == PHASE_CONJ else k, e)
                for k, e in key
            )
            out.append((swapped, c.conjugate()))
        return Scalar(out)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.const(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __lt__(self, other):
        return self._terms < other._terms

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        """Numerical value with parameters substituted."""
        total = 0j
        for key, c in self._terms:
            term = complex(c)
            for name, e in key:
                term *= _numeric_power(name, e, values)
            total += term
        return total

    def evaluate_exact(self, values: Mapping) -> GaussianRational:
        """Exact value; needs rational values and integer exponents."""
        total = GaussianRational(0)
        for key, c in self._terms:
            term = c
            for name, e in key:
                if e.denominator != 1:
                    raise ValueError(f"{name}^{e} has no exact rational value")
                term = term * GaussianRational.coerce(_lookup(name, values)) ** int(e)
            total = total + term
        return total

    def substitute(self, name: str, value: "Scalar") -> "Scalar":
        """Replace an integer power of ``name`` by ``value``."""
        out = Scalar()
        for key, c in self._terms:
            rest = tuple((k, e) for k, e in key if k != name)
            e = dict(key).get(name, Fraction(0))
            if e.denominator != 1:
                raise ValueError(f"cannot substitute non-integer power of {name}")
            out = out + Scalar({rest: c}) * value ** int(e)
        return out

    def __repr__(self):
        return f"Scalar({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        from .render import scalar_text

        return scalar_text(self)


def _lookup(name: str, values: Mapping):
    if name.isdigit():
        return int(name)
    if name in values:
        return values[name]
    if name == PHASE_CONJ and PHASE in values:
        v = values[PHASE]
        return v.conjugate() if hasattr(v, "conjugate") else v
    raise MissingParameterError(name)


def _numeric_power(name: str, e: Fraction, values: Mapping) -> complex:
    v = _lookup(name, values)
    if isinstance(v, GaussianRational):
        v = complex(v)
    if e.denominator == 1:
        return complex(v) ** int(e)
    if isinstance(v, complex) and v.imag != 0:
        return cmath.exp(float(e) * cmath.log(v))
    return float(v) ** float(e)


_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$|^\d+$")


def is_valid_name(name: str) -> bool:
    return bool(_NAME_RE.match(name))
