#!/usr/bin/env python3
"""Calibrate the induced-P4 count of the overlay construction.

For each (eps, seed) the script builds the construction, exactly counts
induced-P4 embeddings, verifies every copy stays inside one part, and prints
the ratio embeddings / (eps^6 n^4).  The maximum observed ratio is what pins
the regression constant used by the acceptance suite.
"""

import argparse
from fractions import Fraction

from homlab.generators import overlay_construction
from homlab.graphs import count_induced_p4


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=150)
    ap.add_argument("--eps", nargs="+", default=["1/20", "1/10"])
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2, 3, 4])
    args = ap.parse_args()

    worst = Fraction(0)
    for eps_text in args.eps:
        eps = Fraction(eps_text)
        for seed in args.seeds:
            art = overlay_construction(args.n, eps, seed)
            subsets, embeddings, copies = count_induced_p4(art.graph)
            within = all(len({art.part_of(v) for v in c}) == 1 for c in copies)
            ratio = Fraction(embeddings) / (eps**6 * args.n**4)
            worst = max(worst, ratio)
            print(
                f"eps={eps} seed={seed} s={art.s} subsets={subsets} "
                f"embeddings={embeddings} ratio={float(ratio):.1f} within_part={within}"
            )
    print(f"max ratio: {float(worst):.1f}  (regression constant must be >= this)")


if __name__ == "__main__":
    main()
