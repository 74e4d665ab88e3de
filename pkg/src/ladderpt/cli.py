"""Command line front end: ``ladderpt run | spectrum | verify``.

Exit codes: 0 ok, 1 a check failed, 2 usage or configuration error.
Results go to stdout, diagnostics to stderr.  Commutator convention is
``[a, a†] = 1``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import FORMATS, ProblemConfig, parse_config, parse_params, parse_states
from .engine import SeriesResult, iterate
from .models import PRESETS, evaluate_spectrum
from .render import expr_latex, expr_pretty, expr_to_json, scalar_pretty, scalar_to_json
from .scalars import MissingParameterError
from .verify import SCOPES, report, run_checks

CONVENTION = {"hw": "[a, a†] = 1", "su2": "[L0, L±] = ±ħ L±, [L+, L-] = 2ħ L0"}


class UsageError(Exception):
    pass


# -- rendering ----------------------------------------------------------------


def render_text(series: SeriesResult) -> str:
    p = series.problem
    lines = [
        f"# problem: {p.name} (algebra {p.algebra}, gap {scalar_pretty(p.gap.gap_constant)}),"
        f" orders 1..{series.max_order}",
        f"# convention: {CONVENTION[p.algebra]}",
        f"# V = {expr_pretty(p.v)}",
    ]
    for n in range(1, series.max_order + 1):
        lines.append(f"order {n}" + (" (vanishes)" if n in series.zero_orders else ""))
        lines.append(f"  A_{n} = {expr_pretty(series.A(n))}")
        lines.append(f"  W_{n} = {expr_pretty(series.W(n))}")
        lines.append(f"  G_{n} = {expr_pretty(series.G(n))}")
    lines.append(f"W = {expr_pretty(series.w_total())}")
    lines.append(f"G = {expr_pretty(series.g_total())}")
    return "\n".join(lines) + "\n"


def render_latex(series: SeriesResult) -> str:
    p = series.problem
    lines = [f"% {p.name}: orders 1..{series.max_order}, {CONVENTION[p.algebra]}",
             r"\begin{align*}"]
    for n in range(1, series.max_order + 1):
        for sym, expr in (("A", series.A(n)), ("W", series.W(n)), ("G", series.G(n))):
            lines.append(rf"\hat{{{sym}}}_{{{n}}} &= {expr_latex(expr)} \\")
    lines.append(rf"\hat{{W}} &= {expr_latex(series.w_total())} \\")
    lines.append(rf"\hat{{G}} &= {expr_latex(series.g_total())}")
    lines.append(r"\end{align*}")
    return "\n".join(lines) + "\n"


def series_to_json(series: SeriesResult) -> dict:
    p = series.problem
    return {
        "problem": {
            "name": p.name,
            "algebra": p.algebra,
            "convention": CONVENTION[p.algebra],
            "gap": scalar_to_json(p.gap.gap_constant),
            "h0_central": scalar_to_json(p.h0_central),
            "v": expr_to_json(p.v),
            "max_order": series.max_order,
        },
        "orders": [
            {
                "order": n,
                "zero": n in series.zero_orders,
                "A": expr_to_json(series.A(n)),
                "W": expr_to_json(series.W(n)),
                "G": expr_to_json(series.G(n)),
            }
            for n in range(1, series.max_order + 1)
        ],
        "W": expr_to_json(series.w_total()),
        "G": expr_to_json(series.g_total()),
    }


def render_json(series: SeriesResult) -> str:
    return json.dumps(series_to_json(series), indent=2, ensure_ascii=False) + "\n"


RENDERERS = {"text": render_text, "json": render_json, "latex": render_latex}


def render_spectrum(rows, fmt: str) -> str:
    if fmt == "json":
        data = [
            {"state": str(r.state), "e0": r.e0, "corrections": list(r.corrections),
             "energy": r.energy}
            for r in rows
        ]
        return json.dumps(data, indent=2) + "\n"
    n = len(rows[0].corrections) if rows else 0
    header = ["state", "E0"] + [f"dE_{k}" for k in range(1, n + 1)] + ["E"]
    lines = ["\t".join(header)]
    for r in rows:
        cells = [str(r.state), f"{r.e0:.12g}"] + [f"{c:.12g}" for c in r.corrections]
        lines.append("\t".join(cells + [f"{r.energy:.12g}"]))
    return "\n".join(lines) + "\n"


# -- commands -----------------------------------------------------------------


def build_config(args) -> ProblemConfig:
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        cfg = parse_config(text)
        if args.preset:
            raise UsageError("--preset and --config are mutually exclusive")
    elif args.preset:
        cfg = ProblemConfig(preset=args.preset)
    else:
        raise UsageError("give --preset or --config")
    if args.order is not None:
        if args.order < 1:
            raise UsageError("--order must be >= 1")
        cfg.order = args.order
    if args.format is not None:
        cfg.format = args.format
    if getattr(args, "params", None):
        cfg.params.update(parse_params(args.params))
    if getattr(args, "states", None):
        cfg.states = parse_states(args.states)
    return cfg


def cmd_run(args, out) -> int:
    cfg = build_config(args)
    series = iterate(cfg.problem())
    out.write(RENDERERS[cfg.format](series))
    return 0


def cmd_spectrum(args, out) -> int:
    cfg = build_config(args)
    if not cfg.states:
        raise UsageError("spectrum needs --states")
    series = iterate(cfg.problem())
    try:
        rows = evaluate_spectrum(series, cfg.states, cfg.params)
    except MissingParameterError as exc:
        raise UsageError(f"{exc}; pass it with --params") from exc
    out.write(render_spectrum(rows, "json" if cfg.format == "json" else "text"))
    return 0


def cmd_verify(args, out) -> int:
    scopes = SCOPES if not args.scope or "all" in args.scope else args.scope
    ok = report(run_checks(scopes, samples=args.samples), emit=lambda s: out.write(s + "\n"))
    return 0 if ok else 1


def _add_problem_args(p: argparse.ArgumentParser):
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--config", help="TOML problem file")
    p.add_argument("--order", type=int, help="maximum perturbation order")
    p.add_argument("--format", choices=FORMATS)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ladderpt",
        description="Algebraic operator perturbation theory on ladder-operator algebras.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="solve the perturbation equations symbolically")
    _add_problem_args(run)
    run.set_defaults(func=cmd_run)

    spc = sub.add_parser("spectrum", help="numeric energies from the shift operator")
    _add_problem_args(spc)
    spc.add_argument("--params", help="k=v,... numeric parameter values")
    spc.add_argument("--states", help="comma list: n (hw) or l:m (su2)")
    spc.set_defaults(func=cmd_spectrum)

    ver = sub.add_parser("verify", help="run the built-in verification suite")
    ver.add_argument("--scope", action="append", choices=("all",) + SCOPES)
    ver.add_argument("--samples", type=int, default=1000,
                     help="random monomials per algebra for identity checks")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except (UsageError, ValueError) as exc:
        print(f"ladderpt: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
