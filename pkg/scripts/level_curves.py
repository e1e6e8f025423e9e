"""Level curves of log beta and gamma in the (t, lambda) plane.

    python scripts/level_curves.py --out levels.svg
"""

from __future__ import annotations

import argparse
import math
from pathlib import Path

import numpy as np

from gearmap import CurveSet, level_curves
from gearmap.solver import RegionG, level_curve_intercept, limit_lambda


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t-count", type=int, default=12)
    ap.add_argument("--out", type=Path, default=Path("levels.json"))
    args = ap.parse_args()

    t_grid = np.unique(np.concatenate([np.linspace(0.05, 0.5, 8), np.linspace(0.5, math.pi / 2 - 0.05, args.t_count)]))
    betas = [0.2 * k for k in range(1, 6)]
    gammas = [k * math.pi / 10 for k in range(1, 10)]
    curves = level_curves("beta", betas, t_grid) + level_curves("gamma", gammas, t_grid)

    cs = CurveSet(meta={"t_grid": [float(t) for t in t_grid]})
    ts = np.linspace(1e-3, math.pi / 2 - 1e-3, 200)
    cs.add("lambda-minus", "boundary-edge", ts + 1j * np.array([RegionG.lower(t) for t in ts]))
    cs.add("lambda-plus", "boundary-edge", ts + 1j * np.array([RegionG.upper(t) for t in ts]))
    for c in curves:
        cs.add(c.label, "level-curve", [complex(t, lam) for t, lam in c.points])
        if c.kind == "gamma" and sum(t <= 0.5 for t, _ in c.points) > 3:
            print(f"{c.label}: intercept {level_curve_intercept(c):+.4f}, limit {limit_lambda(c.value):+.4f}")
    cs.write(args.out, args.out.suffix.lstrip(".") or "json")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
