"""Ten-tooth gear from the one-tooth gear with beta = 1.3**10, gamma = pi/2.

    python scripts/multitooth_gear.py --out ten_tooth.svg
"""

from __future__ import annotations

import argparse
import math
from pathlib import Path

from gearmap import GearParams, invert, multitooth, renormalized_gear_map


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-teeth", type=int, default=10)
    ap.add_argument("--out", type=Path, default=Path("multitooth.svg"))
    args = ap.parse_args()

    n = args.n_teeth
    p = invert(GearParams(1.3**n, math.pi / 2))
    print(f"t = {p.t:.6f}, lambda = {p.lam:.6f}")
    g = renormalized_gear_map(p).standardized()
    mt, cs = multitooth(g, n)
    print(f"one-tooth beta = {g.gear.beta:.6f}, gamma = {g.gear.gamma:.6f}")
    print(f"{n}-tooth radius ratio = {g.gear.beta ** (1 / n):.6f}")
    cs.write(args.out, args.out.suffix.lstrip(".") or "json")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
