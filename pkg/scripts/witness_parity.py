"""Witness minima for three-site arrangements versus lambda.

Near lambda = -1 the triples that mix site parities stay detected while the
all-same-parity ones drift to the boundary.

    python scripts/witness_parity.py --N 16 --out witness.csv
"""

import argparse

import numpy as np

from gmewit.geometry import DETECTION_THRESHOLD
from gmewit.sweep import SweepConfig, parse_arrangement, run_sweep, write_records

DEFAULT_TRIPLES = "123 124 125 126 134 135 136 137 146"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=16)
    ap.add_argument("--triples", default=DEFAULT_TRIPLES)
    ap.add_argument("--out", default="witness.csv")
    ap.add_argument("--workers", type=int)
    args = ap.parse_args()

    triples = tuple(parse_arrangement(t) for t in args.triples.split())
    lambdas = (-0.999, -0.99, -0.95, -0.9, -0.7, -0.5, 0.0, 0.5, 1.0)
    cfg = SweepConfig(N=args.N, lambdas=lambdas, arrangements=triples, quantities=("witness",))
    recs = run_sweep(cfg, workers=args.workers)
    write_records(recs, args.out)

    labels = sorted({r.arrangement for r in recs})
    print("lambda    " + " ".join(f"{a:>8s}" for a in labels))
    for lam in lambdas:
        vals = {r.arrangement: r.value for r in recs if np.isclose(r.lam, lam)}
        cells = [f"{vals[a]:+.4f}{'*' if vals[a] < DETECTION_THRESHOLD else ' '}" for a in labels]
        print(f"{lam:+.3f}   " + " ".join(cells))
    print("* = detected")


if __name__ == "__main__":
    main()
