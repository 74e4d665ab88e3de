"""Parse scalar and operator terms written as ``factor * factor * ...``.

A factor is one of

* a rational (``3``, ``-1/2``), ``i``, or a parenthesised Gaussian rational
  ``(1/2+3*i)``;
* a parameter with optional exponent: ``hbar``, ``m^-1``, ``omega0^{-1/2}``,
  ``2^(1/2)`` (digit bases are radicals);
* a generator word: ``a†``, ``a^2``, ``L+ L0^2 L-`` (space separated).

Terms of an operator sum are separated by `` + `` (with spaces), so the
canonical text form of :mod:`ladderpt.render` parses back.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import GENERATORS, OperatorExpr, generator_monomial, multiply
from .scalars import GaussianRational, Scalar, is_valid_name

ALIASES = {
    "ħ": "hbar",
    "𝓔": "field",
    "ω₀": "omega0",
    "κ": "kappa",
    "u*": "u_conj",
    "ε_R": "eps_R",
    "L₊": "L+",
    "L₋": "L-",
    "L₀": "L0",
}


class TermSyntaxError(ValueError):
    pass


_EXP_RE = re.compile(r"^(?P<base>[^\^]+)\^(?P<exp>.+)$")
_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_GAUSS_RE = re.compile(
    r"^(?P<re>[+-]?\d+(?:/\d+)?)?(?:(?P<sign>[+-])?(?:(?P<im>\d+(?:/\d+)?)\*?)?i)?$"
)


def _parse_exponent(text: str) -> Fraction:
    t = text.strip()
    if t[:1] in "({" and t[-1:] in ")}":
        t = t[1:-1].strip()
    if not _RATIONAL_RE.match(t):
        raise TermSyntaxError(f"bad exponent {text!r}")
    return Fraction(t)


def parse_gaussian(text: str) -> GaussianRational:
    t = text.replace(" ", "")
    if t[:1] == "(" and t[-1:] == ")":
        t = t[1:-1]
    if _RATIONAL_RE.match(t):
        return GaussianRational(Fraction(t))
    m = _GAUSS_RE.match(t)
    if not m or not t:
        raise TermSyntaxError(f"bad number {text!r}")
    re_part = Fraction(m["re"]) if m["re"] else Fraction(0)
    im = Fraction(m["im"]) if m["im"] else Fraction(1)
    # "-i" parses as re="" sign="-"; "1-2*i" as re="1" sign="-"
    if m["sign"] == "-":
        im = -im
    return GaussianRational(re_part, im)


def _split_factors(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == "*" and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [f.strip() for f in out]


def _split_sum(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if depth == 0 and text.startswith(" + ", i):
            out.append(cur)
            cur = ""
            i += 3
            continue
        cur += ch
        i += 1
    out.append(cur)
    return [t.strip() for t in out if t.strip()]


def _canon(token: str) -> str:
    return ALIASES.get(token, token)


def _generator_power(token: str) -> tuple[str, int] | None:
    m = _EXP_RE.match(token)
    base, exp = (m["base"], m["exp"]) if m else (token, "1")
    base = _canon(base)
    if base not in GENERATORS:
        return None
    e = _parse_exponent(exp)
    if e.denominator != 1 or e < 0:
        raise TermSyntaxError(f"generator power must be a nonnegative integer: {token!r}")
    return base, int(e)


def _parse_factor(token: str, known_params=None):
    """Return ('scalar', Scalar) or ('word', [generator symbols])."""
    if not token:
        raise TermSyntaxError("empty factor")
    pieces = token.split()
    if len(pieces) > 1 or _generator_power(token) is not None:
        word: list[str] = []
        for piece in pieces:
            gp = _generator_power(piece)
            if gp is None:
                raise TermSyntaxError(f"unknown generator {piece!r}")
            word.extend([gp[0]] * gp[1])
        return "word", word
    neg = token.startswith("-") and not _RATIONAL_RE.match(token)
    if neg:
        token = token[1:].strip()
    try:
        value = Scalar.const(parse_gaussian(token))
    except TermSyntaxError:
        m = _EXP_RE.match(token)
        base, exp = (m["base"].strip(), m["exp"]) if m else (token, "1")
        base = _canon(base)
        if not is_valid_name(base):
            raise TermSyntaxError(f"bad factor {token!r}") from None
        if known_params is not None and not base.isdigit() and base not in known_params:
            raise UnknownParameterError(base)
        value = Scalar.param(base, _parse_exponent(exp))
    return "scalar", (-value if neg else value)


class UnknownParameterError(ValueError):
    def __init__(self, name: str):
        super().__init__(f"unknown parameter {name!r}")
        self.name = name


def parse_scalar(text: str, known_params=None) -> Scalar:
    """Parse a sum of products of numbers and parameters."""
    text = text.strip()
    if text in ("", "0"):
        return Scalar()
    total = Scalar()
    for term in _split_sum(text):
        prod = Scalar.const(1)
        for f in _split_factors(term):
            kind, val = _parse_factor(f, known_params)
            if kind != "scalar":
                raise TermSyntaxError(f"operator factor {f!r} in a scalar")
            prod = prod * val
        total = total + prod
    return total


def parse_term(text: str, algebra: str | None = None, known_params=None) -> OperatorExpr:
    """Parse one product term into a normal-ordered expression."""
    coeff = Scalar.const(1)
    word: list[str] = []
    for f in _split_factors(text.strip()):
        kind, val = _parse_factor(f, known_params)
        if kind == "scalar":
            coeff = coeff * val
        else:
            word.extend(val)
    algs = {generator_monomial(g).algebra for g in word}
    if algebra is not None:
        algs.add(algebra)
    if len(algs) != 1:
        raise TermSyntaxError(
            f"cannot determine a single algebra for term {text!r}: {sorted(algs)}"
        )
    alg = algs.pop()
    out = OperatorExpr.identity(alg, coeff)
    for g in word:
        out = multiply(out, OperatorExpr.term(1, generator_monomial(g)))
    return out


def parse_expr(text: str, algebra: str, known_params=None) -> OperatorExpr:
    """Parse a `` + ``-separated sum of terms (the canonical text form)."""
    text = text.strip()
    out = OperatorExpr.zero(algebra)
    if text == "0":
        return out
    for term in _split_sum(text):
        out = out + parse_term(term, algebra, known_params)
    return out
