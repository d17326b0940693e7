#!/usr/bin/env python3
"""Bounded-point-derivation scans: sup ||dpi(X)|| / w(pi) as the cutoff grows.

For polynomial weights the curve stabilizes at exponent 1 and diverges below
it, the numeric face of the one-point synthesis dichotomy.  Emits a CSV per
exponent and prints the endpoints.
"""

import argparse
import pathlib

from bfw import Su2Dual, make_weight
from bfw.calculus import CasimirData, derivation_bound_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alphas", default="0.5,1,2")
    ap.add_argument("--num", type=int, default=1000)
    ap.add_argument("--outdir", default="derivation_out")
    args = ap.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    su2 = Su2Dual()
    X = CasimirData(su2).basis[2]
    for alpha in (float(a) for a in args.alphas.split(",")):
        w = make_weight(su2, {"kind": "poly", "alpha": alpha})
        rows = derivation_bound_scan(su2, X, w, args.num)
        path = outdir / f"scan_alpha{alpha:g}.csv"
        path.write_text("n,sup\n" + "\n".join(f"{n},{s!r}" for n, s in rows) + "\n")
        print(
            f"alpha={alpha:g}: sup({args.num}) = {rows[-1][1]:.6f}, "
            f"sup(10) = {rows[9][1]:.6f} -> {path}"
        )


if __name__ == "__main__":
    main()
