"""Tooth-edge curvature at z = i as a function of lambda, for several t.

Prints the largest zero of kappa (the gear member of each family) and writes
the curves kappa(lambda) as a CurveSet.

    python scripts/kappa_curves.py --out kappa.json
"""

from __future__ import annotations

import argparse
import math
from pathlib import Path

import numpy as np

from gearmap import CurveSet
from gearmap.spps import lambda_functionals, solve_kappa_zero


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fractions", default="0.1,0.2,0.3,0.4", help="t / pi values")
    ap.add_argument("--samples", type=int, default=80)
    ap.add_argument("--out", type=Path, default=Path("kappa.json"))
    args = ap.parse_args()

    cs = CurveSet(meta={"quantity": "kappa(lambda) at z = i"})
    for frac in (float(s) for s in args.fractions.split(",")):
        t = frac * math.pi
        F = lambda_functionals(t)
        lo, hi = F.domain
        lams = np.linspace(lo + 1e-3, hi - 1e-3, args.samples)
        kap = np.array([F.kappa(x) for x in lams])
        lam0 = solve_kappa_zero(t, functional=F)
        print(f"t = {frac:g} pi: kappa = 0 at lambda = {lam0:.12f}")
        cs.add(f"t={frac:g}pi", "level-curve", lams + 1j * kap)
    cs.write(args.out, "json")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
