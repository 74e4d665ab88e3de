"""Problem configuration documents.

A config is a flat TOML document::

    # either a preset ...
    preset = "zeeman"
    # ... or an explicit problem
    algebra = "su2"                 # "hw" or "su2"
    gap = "hbar*kappa"              # defaults: hbar*omega0 (hw), hbar*kappa (su2)
    central = "eps_R + alpha_r2*L2" # optional additive constant of H0
    v = ["1/2*u*L+", "1/2*u_conj*L-"]   # or one comma-separated string
    symbols = ["g"]                 # extra parameter names, optional

    order = 4
    format = "text"                 # text | json | latex
    states = ["1:1", "1:-1"]        # n for hw, "l:m" for su2

    [params]
    hbar = 1
    kappa = 5
    u = "0.6+0.8j"

V terms are products of factors joined by ``*``; see :mod:`ladderpt.parsing`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .algebra import ALGEBRAS, OperatorExpr
from .engine import PerturbationProblem, ProblemError
from .models import KNOWN_PARAMS, PRESETS, StateLabel, preset
from .parsing import TermSyntaxError, UnknownParameterError, parse_scalar, parse_term
from .superops import GapSpec

FORMATS = ("text", "json", "latex")
DEFAULT_GAPS = {"hw": "hbar*omega0", "su2": "hbar*kappa"}


class ConfigError(ValueError):
    """Parse or validation failure in a problem configuration."""


@dataclass
class ProblemConfig:
    preset: str | None = None
    algebra: str | None = None
    gap: str | None = None
    central: str = "0"
    v_terms: list[str] = field(default_factory=list)
    symbols: list[str] = field(default_factory=list)
    order: int = 4
    format: str = "text"
    params: dict[str, Any] = field(default_factory=dict)
    states: list[StateLabel] = field(default_factory=list)

    def problem(self) -> PerturbationProblem:
        if self.preset is not None:
            return preset(self.preset, self.order)
        known = KNOWN_PARAMS | set(self.symbols)
        algebra = self.algebra
        try:
            gap = GapSpec(algebra, parse_scalar(self.gap or DEFAULT_GAPS[algebra], known))
            central = parse_scalar(self.central, known)
            v = OperatorExpr.zero(algebra)
            for term in self.v_terms:
                v = v + parse_term(term, algebra, known)
            return PerturbationProblem(algebra, gap, central, v, self.order)
        except (TermSyntaxError, UnknownParameterError, ProblemError) as exc:
            raise ConfigError(str(exc)) from exc
        except ValueError as exc:
            raise ConfigError(f"invalid problem: {exc}") from exc


def split_terms(v) -> list[str]:
    if isinstance(v, str):
        return [t.strip() for t in v.split(",") if t.strip()]
    if isinstance(v, list) and all(isinstance(t, str) for t in v):
        return [t.strip() for t in v]
    raise ConfigError("v must be a string or a list of strings")


def parse_value(x):
    """Numeric parameter value: int/float, or a string like ``"1/2"`` or ``"0.6+0.8j"``."""
    if isinstance(x, bool):
        raise ConfigError(f"bad parameter value {x!r}")
    if isinstance(x, (int, float)):
        return float(x)
    if isinstance(x, str):
        t = x.strip().replace(" ", "")
        if re.fullmatch(r"[+-]?\d+/\d+", t):
            num, den = t.split("/")
            return int(num) / int(den)
        try:
            return float(t)
        except ValueError:
            pass
        try:
            return complex(t.replace("i", "j"))
        except ValueError:
            pass
    raise ConfigError(f"bad parameter value {x!r}")


def parse_params(text: str) -> dict[str, Any]:
    """``"k=v,k=v"`` from the command line."""
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        if "=" not in item:
            raise ConfigError(f"expected name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = parse_value(v)
    return out


def parse_states(items) -> list[StateLabel]:
    if isinstance(items, str):
        items = [s for s in items.split(",") if s.strip()]
    try:
        return [StateLabel.parse(str(s)) for s in items]
    except ValueError as exc:
        raise ConfigError(f"bad state list: {exc}") from exc


def _line_of(text: str, needle: str) -> int:
    for i, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return i
    return 0


_KEYS = {"preset", "algebra", "gap", "central", "v", "symbols", "order", "format",
         "params", "states"}


def parse_config(text: str) -> ProblemConfig:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"parse error: {exc}") from exc
    unknown = set(doc) - _KEYS
    if unknown:
        raise ConfigError(f"unknown keys: {sorted(unknown)}")
    cfg = ProblemConfig()
    if "preset" in doc:
        if doc["preset"] not in PRESETS:
            raise ConfigError(f"unknown preset {doc['preset']!r}")
        if "v" in doc or "algebra" in doc:
            raise ConfigError("give either a preset or an explicit algebra/v, not both")
        cfg.preset = doc["preset"]
    else:
        if doc.get("algebra") not in ALGEBRAS:
            raise ConfigError(f"algebra must be one of {list(ALGEBRAS)}")
        if "v" not in doc:
            raise ConfigError("explicit problems need a v term list")
        cfg.algebra = doc["algebra"]
        cfg.gap = doc.get("gap")
        cfg.central = str(doc.get("central", "0"))
        cfg.v_terms = split_terms(doc["v"])
        cfg.symbols = list(doc.get("symbols", []))
    order = doc.get("order", 4)
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise ConfigError(f"order must be a positive integer, got {order!r}")
    cfg.order = order
    cfg.format = doc.get("format", "text")
    if cfg.format not in FORMATS:
        raise ConfigError(f"format must be one of {FORMATS}")
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("params must be a table")
    known = KNOWN_PARAMS | set(cfg.symbols)
    for k in params:
        if k not in known:
            raise ConfigError(f"unknown parameter {k!r} in [params]")
    cfg.params = {k: parse_value(v) for k, v in params.items()}
    cfg.states = parse_states(doc.get("states", []))
    if cfg.preset is None:
        # surface term errors with a location in the document
        for term in cfg.v_terms:
            try:
                parse_term(term, cfg.algebra, known)
            except (TermSyntaxError, UnknownParameterError) as exc:
                raise ConfigError(f"line {_line_of(text, term)}: {exc}") from exc
        cfg.problem()
    return cfg
