"""Stark shift: perturbative series vs truncated-matrix diagonalization.

For each field strength, compares the lowest few eigenvalues of the
truncated oscillator (hbar = m = omega0 = e = 1) with (n + 1/2) - F^2/2,
and reports the off-diagonal residual left by exp(G) H exp(-G).
"""

import argparse
from dataclasses import dataclass, field

from ladderpt.engine import iterate
from ladderpt.models import StateLabel, evaluate_spectrum, stark_problem
from ladderpt.oracle import BasisSpec, eigenvalues_hermitian, hamiltonian_matrix, similarity_check


@dataclass
class StarkConfig:
    fields: list[float] = field(default_factory=lambda: [0.01, 0.05, 0.1, 0.2])
    truncation: int = 60
    levels: int = 4


def run(cfg: StarkConfig):
    problem = stark_problem(2)
    series = iterate(problem)
    basis = BasisSpec.hw(cfg.truncation)
    states = [StateLabel(n=n) for n in range(cfg.levels)]
    for f in cfg.fields:
        vals = {"hbar": 1.0, "m": 1.0, "omega0": 1.0, "e": 1.0, "field": f}
        exact = eigenvalues_hermitian(hamiltonian_matrix(problem, basis, vals))
        rows = evaluate_spectrum(series, states, vals)
        err = max(abs(r.energy - e) for r, e in zip(rows, exact))
        resid = similarity_check(series, basis, vals, 2, strengths=(1.0,)).residuals[0]
        yield f, rows[0].energy, exact[0], err, resid


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fields", type=float, nargs="+", default=StarkConfig().fields)
    ap.add_argument("--truncation", type=int, default=StarkConfig().truncation)
    ap.add_argument("--levels", type=int, default=StarkConfig().levels)
    args = ap.parse_args()
    cfg = StarkConfig(args.fields, args.truncation, args.levels)

    print(f"{'field':>6} {'E_0 series':>14} {'E_0 matrix':>14} {'max |dE|':>10} {'offdiag':>10}")
    for f, series_e, exact_e, err, resid in run(cfg):
        print(f"{f:>6g} {series_e:>14.10f} {exact_e:>14.10f} {err:>10.2e} {resid:>10.2e}")


if __name__ == "__main__":
    main()
