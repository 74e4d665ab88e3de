"""Off-diagonal residual of exp(G_N) H exp(-G_N) under field halving (Zeeman).

The truncated generator leaves an off-diagonal remainder of order
lambda^(N+1); the fitted log-log slope should approach N+1.
"""

import argparse
from dataclasses import dataclass

from ladderpt.engine import iterate
from ladderpt.models import zeeman_problem
from ladderpt.oracle import BasisSpec, similarity_check


@dataclass
class ScalingConfig:
    l: int = 1
    kappa: float = 10.0
    max_order: int = 6
    halvings: int = 3


def main():
    d = ScalingConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--l", type=int, default=d.l)
    ap.add_argument("--kappa", type=float, default=d.kappa)
    ap.add_argument("--max-order", type=int, default=d.max_order)
    ap.add_argument("--halvings", type=int, default=d.halvings)
    cfg = ScalingConfig(**vars(ap.parse_args()))

    series = iterate(zeeman_problem(cfg.max_order))
    vals = {"hbar": 1.0, "kappa": cfg.kappa, "u": 1.0, "eps_R": 0.0, "alpha_r2": 0.0}
    strengths = [2.0**-k for k in range(cfg.halvings)]
    for order in range(1, cfg.max_order + 1):
        rep = similarity_check(series, BasisSpec.su2(cfg.l), vals, order, strengths)
        print(f"N={order}: {rep}")


if __name__ == "__main__":
    main()
