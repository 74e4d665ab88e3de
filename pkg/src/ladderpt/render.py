"""Text, unicode, LaTeX and JSON forms of scalars and operator expressions.

``expr_text`` is the canonical ASCII form (re-parseable by
:func:`ladderpt.parsing.parse_expr`); ``expr_pretty`` and ``expr_latex`` group
terms by monomial for reading; ``expr_to_json``/``expr_from_json`` round-trip
exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import HW, Monomial, OperatorExpr
from .scalars import GaussianRational, Scalar
from .scalars import format_gaussian as gaussian_text

PRETTY_NAMES = {
    "hbar": "ħ",
    "field": "𝓔",
    "omega0": "ω₀",
    "kappa": "κ",
    "u_conj": "u*",
    "eps_R": "ε_R",
    "alpha_r2": "⟨α/r²⟩",
    "L2": "L²",
}

LATEX_NAMES = {
    "hbar": r"\hbar",
    "field": r"\mathcal{E}",
    "omega0": r"\omega_0",
    "kappa": r"\kappa",
    "u_conj": r"u^{*}",
    "eps_R": r"\varepsilon_R^0",
    "alpha_r2": r"\langle \alpha/r^2 \rangle",
    "L2": r"\hat{L}^2",
}

_SUPERSCRIPT = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def _display_order(s: Scalar):
    # leading (highest total degree) term first, e.g. 1/2κ before 1/8κ³
    return sorted(s.terms, key=lambda kc: (-sum(e for _, e in kc[0]), kc[0]))


# -- canonical ASCII ----------------------------------------------------------


def _exp_text(e: Fraction) -> str:
    if e == 1:
        return ""
    return f"^{{{e}}}"


def _key_factors(key) -> list[str]:
    return [f"{name}{_exp_text(e)}" for name, e in key]


def scalar_text(s: Scalar) -> str:
    if s.is_zero():
        return "0"
    parts = []
    for key, c in s.terms:
        parts.append(" * ".join([f"({gaussian_text(c)})"] + _key_factors(key)))
    return " + ".join(parts)


def word_text(m: Monomial) -> str:
    if m.algebra == HW:
        names = ("a†", "a")
    else:
        names = ("L+", "L0", "L-")
    out = []
    for name, p in zip(names, m.powers):
        if p == 1:
            out.append(name)
        elif p > 1:
            out.append(f"{name}^{p}")
    return " ".join(out) if out else "1"


def expr_text(expr: OperatorExpr) -> str:
    if expr.is_zero():
        return "0"
    parts = []
    for mono, coeff in expr.terms:
        for key, c in coeff.terms:
            parts.append(
                " * ".join([f"({gaussian_text(c)})"] + _key_factors(key) + [word_text(mono)])
            )
    return " + ".join(parts)


# -- unicode ------------------------------------------------------------------


def _pretty_exp(e: Fraction) -> str:
    if e == 1:
        return ""
    if e.denominator == 1:
        return str(e.numerator).translate(_SUPERSCRIPT)
    return f"^({e})"


def _pretty_rational(q: Fraction) -> str:
    return str(q) if q.denominator == 1 else f"({q})"


def _pretty_term(c: GaussianRational, key) -> tuple[str, str]:
    """Return (sign, body) for one scalar term."""
    factors = [f"{PRETTY_NAMES.get(n, n)}{_pretty_exp(e)}" for n, e in key]
    if c.im == 0:
        sign = "−" if c.re < 0 else "+"
        mag = abs(c.re)
        if mag != 1 or not factors:
            factors.insert(0, _pretty_rational(mag))
    else:
        sign = "+"
        factors.insert(0, f"({gaussian_text(c)})")
    return sign, "·".join(factors)


def scalar_pretty(s: Scalar) -> str:
    if s.is_zero():
        return "0"
    out = ""
    for i, (key, c) in enumerate(_display_order(s)):
        sign, body = _pretty_term(c, key)
        if i == 0:
            out = ("−" if sign == "−" else "") + body
        else:
            out += f" {sign} {body}"
    return out


def word_pretty(m: Monomial) -> str:
    names = ("a†", "a") if m.algebra == HW else ("L₊", "L₀", "L₋")
    out = "".join(
        name + (str(p).translate(_SUPERSCRIPT) if p > 1 else "")
        for name, p in zip(names, m.powers)
        if p
    )
    return out or "1"


def expr_pretty(expr: OperatorExpr) -> str:
    if expr.is_zero():
        return "0"
    out = ""
    for i, (mono, coeff) in enumerate(expr.terms):
        word = word_pretty(mono)
        if coeff.is_monomial():
            key, c = coeff.terms[0]
            sign, body = _pretty_term(c, key)
            if body in ("1", ""):
                piece = word
            else:
                piece = f"{body}·{word}"
        else:
            sign, piece = "+", f"({scalar_pretty(coeff)})·{word}"
        if i == 0:
            out = ("−" if sign == "−" else "") + piece
        else:
            out += f" {sign} {piece}"
    return out


# -- LaTeX --------------------------------------------------------------------


def _latex_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return rf"\frac{{{q.numerator}}}{{{q.denominator}}}"


def _latex_term(c: GaussianRational, key) -> tuple[str, str]:
    factors = []
    for n, e in key:
        base = LATEX_NAMES.get(n, n)
        if e == 1:
            factors.append(base)
        else:
            if n == "u_conj":
                base = "{u^{*}}"
            exp = str(e.numerator) if e.denominator == 1 else rf"{e.numerator}/{e.denominator}"
            factors.append(f"{base}^{{{exp}}}")
    if c.im == 0:
        sign = "-" if c.re < 0 else "+"
        mag = abs(c.re)
        if mag != 1 or not factors:
            factors.insert(0, _latex_rational(mag))
    else:
        sign = "+"
        re_part = _latex_rational(c.re) if c.re else ""
        im_mag = _latex_rational(abs(c.im)) if abs(c.im) != 1 else ""
        im_sign = "+" if c.im > 0 and re_part else ("-" if c.im < 0 else "")
        factors.insert(0, rf"\left({re_part}{im_sign}{im_mag}i\right)")
    return sign, " ".join(factors)


def scalar_latex(s: Scalar) -> str:
    if s.is_zero():
        return "0"
    out = ""
    for i, (key, c) in enumerate(_display_order(s)):
        sign, body = _latex_term(c, key)
        if i == 0:
            out = ("-" if sign == "-" else "") + body
        else:
            out += f" {sign} {body}"
    return out


def word_latex(m: Monomial) -> str:
    if m.algebra == HW:
        names = (r"\hat{a}^{\dagger}", r"\hat{a}")
        powered = (r"\hat{a}^{\dagger %d}", r"\hat{a}^{%d}")
    else:
        names = (r"\hat{L}_{+}", r"\hat{L}_0", r"\hat{L}_{-}")
        powered = (r"\hat{L}_{+}^{%d}", r"\hat{L}_0^{%d}", r"\hat{L}_{-}^{%d}")
    out = []
    for name, fmt, p in zip(names, powered, m.powers):
        if p == 1:
            out.append(name)
        elif p > 1:
            out.append(fmt % p)
    return "".join(out) or r"\hat{1}"


def expr_latex(expr: OperatorExpr) -> str:
    if expr.is_zero():
        return r"\hat{0}"
    out = ""
    for i, (mono, coeff) in enumerate(expr.terms):
        word = word_latex(mono)
        if coeff.is_monomial():
            key, c = coeff.terms[0]
            sign, body = _latex_term(c, key)
            piece = word if body in ("1", "") else f"{body} {word}"
        else:
            sign, piece = "+", rf"\left({scalar_latex(coeff)}\right) {word}"
        if i == 0:
            out = ("-" if sign == "-" else "") + piece
        else:
            out += f" {sign} {piece}"
    return out


# -- JSON ---------------------------------------------------------------------


def scalar_to_json(s: Scalar) -> list[dict]:
    return [
        {
            "re": str(c.re),
            "im": str(c.im),
            "params": {name: str(e) for name, e in key},
        }
        for key, c in s.terms
    ]


def scalar_from_json(data: list[dict]) -> Scalar:
    return Scalar(
        [
            (
                tuple((name, Fraction(e)) for name, e in t.get("params", {}).items()),
                GaussianRational(Fraction(t["re"]), Fraction(t.get("im", "0"))),
            )
            for t in data
        ]
    )


def expr_to_json(expr: OperatorExpr) -> dict:
    terms = []
    for mono, coeff in expr.terms:
        for item in scalar_to_json(coeff):
            item["powers"] = list(mono.powers)
            terms.append(item)
    return {"algebra": expr.algebra, "terms": terms}


def expr_from_json(data: dict) -> OperatorExpr:
    algebra = data["algebra"]
    out = []
    for t in data["terms"]:
        mono = Monomial(algebra, tuple(int(p) for p in t["powers"]))
        out.append((mono, scalar_from_json([t])))
    return OperatorExpr(algebra, out)
