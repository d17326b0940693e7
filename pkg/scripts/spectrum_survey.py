#!/usr/bin/env python3
"""Spectrum survey: radii and equals-group verdicts across weight recipes.

Prints one row per (group, weight): the probe radii, the annulus where that
makes sense, and whether the Gelfand spectrum is certified (at the truncation)
to collapse onto the group.
"""

import argparse

from bfw import SemidirectDual, Su2Dual, TorusDual, make_weight
from bfw.spectrum import spectrum_bounds

RECIPES = ["const:1", "dim", "poly:alpha=0.5", "poly:alpha=1", "exp:lambda=2",
           "exp:lambda=4", "prod(poly:alpha=1,dim)"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--num", type=int, default=None, help="truncation depth")
    args = ap.parse_args()

    for dual in (TorusDual(1), Su2Dual(), SemidirectDual()):
        for spec in RECIPES:
            w = make_weight(dual, spec)
            desc = spectrum_bounds(dual, w, n_max=args.num)
            radii = ", ".join(f"{k}:{v:.6f}" for k, v in sorted(desc.radii.items()))
            tag = "= G" if desc.equals_group else "> G"
            print(f"{dual!r:10} {spec:26} {tag}   {radii}")


if __name__ == "__main__":
    main()
