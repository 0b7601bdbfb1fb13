"""Pair concurrences C(x, x+r) versus lambda for an open XXZ chain.

As lambda -> -1 from above all distances collapse onto the Dicke value 1/(N-1).

    python scripts/concurrence_collapse.py --N 16 --out concurrence.csv
"""

import argparse

import numpy as np

from gmewit.measures import dicke_concurrence
from gmewit.sweep import SweepConfig, run_sweep, write_records


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=16)
    ap.add_argument("--rmax", type=int, default=5)
    ap.add_argument("--out", default="concurrence.csv")
    ap.add_argument("--workers", type=int)
    args = ap.parse_args()

    lambdas = tuple(-1 + np.logspace(-3, 0, 13)) + (0.5, 1.0)
    pairs = tuple((1, 1 + r) for r in range(1, args.rmax + 1))
    cfg = SweepConfig(N=args.N, lambdas=lambdas, arrangements=pairs, quantities=("concurrence",))
    recs = run_sweep(cfg, workers=args.workers)
    write_records(recs, args.out)

    target = dicke_concurrence(args.N, 0)
    print(f"Dicke limit 1/(N-1) = {target:.5f}")
    print("lambda     " + "  ".join(f"r={r:<5d}" for r in range(1, args.rmax + 1)))
    for lam in sorted({r.lam for r in recs}):
        row = [r.value for r in recs if r.lam == lam]
        print(f"{lam:+.5f}  " + "  ".join(f"{v:.5f}" for v in row))


if __name__ == "__main__":
    main()
