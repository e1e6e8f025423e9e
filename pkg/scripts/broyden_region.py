"""Where the guarded Broyden inversion succeeds, starting from (pi/4, 0).

Targets are forward images of a (t, lambda) grid; each grid point is marked
by the number of forward evaluations used, or as a failure.

    python scripts/broyden_region.py --n 8
"""

from __future__ import annotations

import argparse
import math

import numpy as np

from gearmap import MapParams, forward, invert
from gearmap.errors import GearMapError
from gearmap.solver import lambda_bounds


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8, help="grid points per axis")
    args = ap.parse_args()

    ts = np.linspace(0.1, math.pi / 2 - 0.1, args.n)
    fractions = np.linspace(0.05, 0.95, args.n)
    print("rows: lambda fraction of the region, columns: t")
    print("      " + " ".join(f"{t:5.2f}" for t in ts))
    for u in fractions[::-1]:
        row = []
        for t in ts:
            lo, hi = lambda_bounds(t)
            lam = lo + u * (hi - lo)
            try:
                record = []
                p = invert(forward(MapParams(t, lam)), record=record)
                ok = abs(p.t - t) < 1e-6 and abs(p.lam - lam) < 1e-6
                row.append(f"{len(record):5d}" if ok else "  bad")
            except GearMapError:
                row.append("    -")
        print(f"{u:5.2f} " + " ".join(row))


if __name__ == "__main__":
    main()
