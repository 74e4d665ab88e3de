"""Zeeman series against exact diagonalization.

Prints, for every (l, order), the worst relative error over m != 0 at each
kappa, plus the error exponent measured by doubling kappa.  The absolute
error should fall as kappa^-(N+1).

    python scripts/zeeman_convergence.py --l 1 2 3 --kappa 2 5 10 --orders 2 4 6
"""

import argparse
import math
from dataclasses import dataclass, field

from ladderpt.verify import zeeman_energy_errors


@dataclass
class SweepConfig:
    ls: list[int] = field(default_factory=lambda: [1, 2, 3])
    kappas: list[float] = field(default_factory=lambda: [2.0, 5.0, 10.0])
    orders: list[int] = field(default_factory=lambda: [2, 4, 6])


def sweep(cfg: SweepConfig):
    rows = []
    for l in cfg.ls:
        for order in cfg.orders:
            for kappa in cfg.kappas:
                base = zeeman_energy_errors(l, kappa, order)
                doubled = {m: abs(p - e) for m, p, e in zeeman_energy_errors(l, 2 * kappa, order)}
                rel = max(abs(p - e) / abs(e) for _, p, e in base)
                slopes = [math.log(abs(p - e) / doubled[m], 2) for m, p, e in base]
                rows.append((l, order, kappa, rel, 2 * kappa ** -(order + 1), min(slopes), max(slopes)))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--l", type=int, nargs="+", default=SweepConfig().ls)
    ap.add_argument("--kappa", type=float, nargs="+", default=SweepConfig().kappas)
    ap.add_argument("--orders", type=int, nargs="+", default=SweepConfig().orders)
    args = ap.parse_args()
    cfg = SweepConfig(args.l, args.kappa, args.orders)

    print(f"{'l':>2} {'N':>2} {'kappa':>6} {'rel err':>10} {'bound':>10} {'exponent':>16}")
    for l, order, kappa, rel, bound, lo, hi in sweep(cfg):
        print(f"{l:>2} {order:>2} {kappa:>6g} {rel:>10.3e} {bound:>10.3e} "
              f"{lo:>7.3f}..{hi:<7.3f}")


if __name__ == "__main__":
    main()
