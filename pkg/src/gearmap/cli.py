"""``gearmap`` command line: maps, inversion, region sweeps and the applications."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import FORMATS, RunConfig
from .curves import CurveSet
from .errors import GearMapError

EXIT_USAGE = 2
EXIT_NUMERIC = 3


def angle(text: str) -> float:
    """Float with an optional ``pi`` / ``π`` multiplier suffix, e.g. ``0.1pi``."""
    s = text.strip().replace("π", "pi")
    try:
        if s.endswith("pi"):
            head = s[:-2].rstrip("*")
            sign = {"": 1.0, "+": 1.0, "-": -1.0}
            return (sign[head] if head in sign else float(head)) * math.pi
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def angle_list(text: str) -> list[float]:
    return [angle(p) for p in text.split(",") if p.strip()]


def grid_spec(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like WxH, got {text!r}") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, help="ODE local error tolerance")
    p.add_argument("--grid", type=grid_spec, help="mesh lines as WxH")
    p.add_argument("--spps-order", type=int, help="initial SPPS truncation order")
    p.add_argument("--format", choices=FORMATS, help="output format")
    p.add_argument("--out", type=Path, help="output path for curve data")
    p.add_argument("--config", type=Path, help="JSON file with RunConfig keys")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gearmap", description=__doc__)
    ap.add_argument("--version", action="version", version=f"gearmap {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("map-disk", help="gear map from the disk for (t, lambda)")
    p.add_argument("--t", type=angle, required=True)
    p.add_argument("--lambda", dest="lam", type=angle, required=True)
    _common(p)

    p = sub.add_parser("map-rect", help="gear map from the rectangle for (tau, mu) or (t, lambda)")
    p.add_argument("--tau", type=float, help="tau / i")
    p.add_argument("--mu", type=float)
    p.add_argument("--t", type=angle)
    p.add_argument("--lambda", dest="lam", type=angle)
    p.add_argument("--alpha", choices=("bounded", "unbounded"), default="bounded")
    _common(p)

    p = sub.add_parser("invert", help="(t, lambda) for a prescribed gear (beta, gamma)")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=angle, required=True)
    _common(p)

    p = sub.add_parser("region", help="level curves of log beta and gamma in the (t, lambda) plane")
    p.add_argument("--beta-levels", type=angle_list, default=[])
    p.add_argument("--gamma-levels", type=angle_list, default=[])
    p.add_argument("--t-range", type=angle_list, default=[0.05, 1.45, 8], help="start,stop,count")
    _common(p)

    p = sub.add_parser("multitooth", help="regular n-tooth gear from a one-tooth gear")
    p.add_argument("--t", type=angle)
    p.add_argument("--lambda", dest="lam", type=angle)
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=angle)
    p.add_argument("--n-teeth", type=int, required=True)
    _common(p)

    p = sub.add_parser("modulus", help="module of the exterior of an annular rectangle")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=angle, required=True)
    _common(p)

    p = sub.add_parser("goodman", help="singular-integral ratio f'(0)/f(1) two ways")
    p.add_argument("--t1", type=angle, required=True)
    p.add_argument("--t2", type=angle, required=True)
    _common(p)

    p = sub.add_parser("spps-check", help="compare series jets with direct integration")
    p.add_argument("--t", type=angle, required=True)
    p.add_argument("--lambda", dest="lam", type=angle_list, help="comma-separated values")
    _common(p)
    return ap


def _config(args) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    return cfg.updated(ode_tol=args.tol, grid=args.grid, spps_order=args.spps_order, format=args.format)


def _emit(cs: CurveSet, cfg: RunConfig, args, out) -> None:
    cs.meta.update({"config": cfg.as_dict(), "command": args.command, "version": __version__})
    if args.out is None:
        if cfg.format == "json":
            out.write(cs.to_json() + "\n")
        elif cfg.format == "svg":
            out.write(cs.to_svg())
        else:
            for name, text in cs.to_csv().items():
                out.write(f"# {name}\n{text}")
        return
    for path in cs.write(args.out, cfg.format):
        print(f"wrote {path}", file=sys.stderr)


def _emit_text(values: dict, cfg: RunConfig, out) -> None:
    for k, v in values.items():
        out.write(f"{k}={v:.12g}\n" if isinstance(v, float) else f"{k}={v}\n")
    out.write(f"config={json.dumps(cfg.as_dict(), sort_keys=True)}\n")


def _disk_mesh(gmap, grid, n_samples: int = 33, r_max: float = 0.98) -> list[tuple[str, np.ndarray]]:
    """Images of rays and circles of the disk (kept inside ``|z| <= r_max``)."""
    W, H = grid
    n_rays = 4 * W
    theta = 2 * math.pi * np.arange(n_rays) / n_rays
    s = np.linspace(0.0, 1.0, n_samples)
    _, samples = gmap.disk.basis(r_max * np.exp(1j * theta), s_eval=s)
    y1, y2p = samples[:, 0, :], samples[:, 2, :]
    w = gmap.scale * gmap.disk.normalizer(y2p / y1)
    lines = [(f"ray{j:02d}", w[:, 4 * j]) for j in range(W)]
    for k in range(1, H + 1):
        i = int(round(k * (n_samples - 1) / H))
        lines.append((f"circle{k:02d}", np.append(w[i], w[i, 0])))
    return lines


def _cmd_map_disk(args, cfg, out):
    from .geartools import renormalized_gear_map
    from .schwarzian import MapParams

    g = renormalized_gear_map(MapParams(args.t, args.lam), cfg.ode_tol).standardized()
    tr = g.trace(cfg.edge_samples)
    cs = tr.curveset({"t": args.t, "lambda": args.lam, "beta": g.gear.beta, "gamma": g.gear.gamma, "q": g.q})
    for label, w in _disk_mesh(g, cfg.grid):
        cs.add(label, "mesh-line", w)
    print(f"beta={g.gear.beta:.12g} gamma={g.gear.gamma:.12g} q={g.q:.12g}", file=sys.stderr)
    _emit(cs, cfg, args, out)


def _cmd_map_rect(args, cfg, out):
    from .elliptic import module_M
    from .rectmap import RectParams, RectSolutions, map_rectangle, mu_from_lambda

    if args.tau is not None and args.mu is not None:
        params = RectParams(1j * args.tau, args.mu)
    elif args.t is not None and args.lam is not None:
        params = RectParams(1j * module_M(args.t), mu_from_lambda(args.t, args.lam))
    else:
        raise SystemExit("map-rect needs --tau and --mu, or --t and --lambda")
    roots = RectSolutions(params, None, cfg.ode_tol).alpha_roots()
    want = args.alpha == "bounded"
    alpha = next((a for a, b in zip(roots.roots, roots.bounded) if b == want), None)
    if alpha is None:
        raise SystemExit(f"no {args.alpha} root among alpha = {roots.roots}")
    cs = map_rectangle(params, alpha, cfg.grid, tol=cfg.ode_tol)
    print(f"alpha={alpha:.12g} roots={list(roots.roots)} bounded={list(roots.bounded)}", file=sys.stderr)
    _emit(cs, cfg, args, out)


def _cmd_invert(args, cfg, out):
    from .geartools import GearParams
    from .solver import invert

    p = invert(GearParams(args.beta, args.gamma), tol=cfg.ode_tol)
    _emit_text({"t": p.t, "lambda": p.lam}, cfg, out)


def _cmd_region(args, cfg, out):
    from .solver import level_curves

    if len(args.t_range) != 3:
        raise SystemExit("--t-range takes start,stop,count")
    t_grid = np.linspace(args.t_range[0], args.t_range[1], int(args.t_range[2]))
    cs = CurveSet(meta={"beta_levels": args.beta_levels, "gamma_levels": args.gamma_levels, "t_grid": list(t_grid)})
    curves = []
    if args.beta_levels:
        curves += level_curves("beta", args.beta_levels, t_grid, tol=cfg.ode_tol, xtol=cfg.root_tol)
    if args.gamma_levels:
        curves += level_curves("gamma", args.gamma_levels, t_grid, tol=cfg.ode_tol, xtol=cfg.root_tol)
    for c in curves:
        cs.add(c.label, "level-curve", [complex(t, lam) for t, lam in c.points])
    _emit(cs, cfg, args, out)


def _cmd_multitooth(args, cfg, out):
    from .geartools import GearParams, multitooth, renormalized_gear_map
    from .schwarzian import MapParams
    from .solver import invert

    if args.t is not None and args.lam is not None:
        p = MapParams(args.t, args.lam)
    elif args.beta is not None and args.gamma is not None:
        p = invert(GearParams(args.beta, args.gamma), tol=cfg.ode_tol)
    else:
        raise SystemExit("multitooth needs --t and --lambda, or --beta and --gamma")
    g = renormalized_gear_map(p, cfg.ode_tol).standardized()
    _, cs = multitooth(g, args.n_teeth)
    cs.meta.update({"beta": g.gear.beta, "gamma": g.gear.gamma})
    _emit(cs, cfg, args, out)


def _cmd_modulus(args, cfg, out):
    from .rectmap import exterior_modulus_annular_rectangle, reflection_check

    m, t, lam = exterior_modulus_annular_rectangle(args.beta, args.gamma, tol=cfg.ode_tol)
    dist = reflection_check(t, lam, tol=cfg.ode_tol)
    _emit_text({"modulus": m, "t": t, "lambda": lam, "reflection_distance": dist}, cfg, out)


def _cmd_goodman(args, cfg, out):
    from .apps import goodman_ratio_integral, goodman_ratio_jet

    a = goodman_ratio_integral(args.t1, args.t2)
    b = goodman_ratio_jet(args.t1, args.t2, cfg.ode_tol)
    _emit_text({"integral": a, "jet": b, "difference": abs(a - b)}, cfg, out)


def _cmd_spps_check(args, cfg, out):
    from .odecore import DiskMap
    from .schwarzian import disk_schwarzian
    from .spps import RAYS, build_spps, eval_solutions, lambda_region, quotient_jet

    lo, hi = lambda_region(args.t)
    lams = args.lam or list(np.linspace(lo + 0.01, hi - 0.01, 5))
    tables = {
        d: build_spps(args.t, N=cfg.spps_order, direction=d, tol=cfg.ode_tol, tail_tol=cfg.spps_tail_tol) for d in RAYS
    }
    worst = 0.0
    for lam in lams:
        f = DiskMap(disk_schwarzian(args.t, lam), tol=cfg.ode_tol)
        for d in RAYS:
            a = quotient_jet(eval_solutions(tables[d], lam)).as_tuple()
            b = f.jet(d).as_tuple()
            err = max(abs(x - y) / max(1.0, abs(y)) for x, y in zip(a, b))
            worst = max(worst, err)
            out.write(f"lambda={lam:.6f} ray={d} max_rel_diff={err:.3e}\n")
    _emit_text({"worst": worst, "order": max(t.order for t in tables.values())}, cfg, out)


COMMANDS = {
    "map-disk": _cmd_map_disk,
    "map-rect": _cmd_map_rect,
    "invert": _cmd_invert,
    "region": _cmd_region,
    "multitooth": _cmd_multitooth,
    "modulus": _cmd_modulus,
    "goodman": _cmd_goodman,
    "spps-check": _cmd_spps_check,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        COMMANDS[args.command](args, cfg, out)
    except GearMapError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(f"error: {exc.code}", file=sys.stderr)
            return EXIT_USAGE
        return int(exc.code or 0)
    return 0


if __name__ == "__main__":
    sys.exit(main())
