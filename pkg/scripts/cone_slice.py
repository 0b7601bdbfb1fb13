"""Region map of a horizontal cut through the invariant cone, with a text preview.

    python scripts/cone_slice.py --r0 0.9 --resolution 201 --out slice.csv
"""

import argparse
from collections import Counter

from gmewit.sweep import SLICE_REGIONS, geometry_slice, write_slice

GLYPHS = dict(zip(SLICE_REGIONS, " s123#?"))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r0", type=float, default=0.9)
    ap.add_argument("--resolution", type=int, default=201)
    ap.add_argument("--out", default="slice.csv")
    ap.add_argument("--preview", type=int, default=41, help="side of the text preview grid")
    args = ap.parse_args()

    rows = geometry_slice(args.r0, args.resolution)
    write_slice(rows, args.out)
    print(Counter(reg for *_, reg in rows))

    n = args.preview
    rows = geometry_slice(args.r0, n)
    # rows come r2-major with r2 increasing; print top row first
    for j in reversed(range(n)):
        print("".join(GLYPHS[reg] for *_, reg in rows[j * n:(j + 1) * n]))
    print("s separable, 1/2/3 lobe, # witness-negative, ? indeterminate")


if __name__ == "__main__":
    main()
