"""Region of gearlikeness, forward measurement (t, lam) -> (beta, gamma) and its inverse."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import GearMapError, LeftRegion, MaxIterations
from .geartools import GearParams, analyze_pregear, gear_normalize, symmetric_map, trace_boundary
from .odecore import DEFAULT_TOL
from .schwarzian import MapParams

GUARD = 1e-4
FD_STEP = 1e-5
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class RegionG:
    """``lam_t^- < lam < lam_t^+`` with ``lam_t^- = -1/4 - (cos t + 1/cos t)/16`` and width 1/2."""

    delta: float = GUARD

    @staticmethod
    def lower(t: float) -> float:
        return -0.25 - (math.cos(t) + 1.0 / math.cos(t)) / 16.0

    @staticmethod
    def upper(t: float) -> float:
        return 0.25 - (math.cos(t) + 1.0 / math.cos(t)) / 16.0

    def contains(self, t: float, lam: float, margin: float = 0.0) -> bool:
        if not margin < t < math.pi / 2 - margin:
            return False
        return self.lower(t) + margin < lam < self.upper(t) - margin

    def clamp(self, t: float, lam: float) -> tuple[float, float, bool]:
        d = self.delta
        tc = min(max(t, d), math.pi / 2 - d)
        lc = min(max(lam, self.lower(tc) + d), self.upper(tc) - d)
        return tc, lc, (tc != t or lc != lam)


def lambda_bounds(t: float) -> tuple[float, float]:
    if not 0.0 < t < math.pi / 2:
        raise ValueError("t must lie in (0, pi/2)")
    return RegionG.lower(t), RegionG.upper(t)


def limit_lambda(gamma: float) -> float:
    """Limit of the gear curve ``gamma = const`` as ``t -> 0``."""
    if not 0.0 < gamma < math.pi:
        raise ValueError("gamma must lie in (0, pi)")
    return (1.0 - (2.0 * gamma / math.pi) ** 2) / 8.0


def forward(p: MapParams, tol: float = DEFAULT_TOL) -> GearParams:
    """Gear parameters of the pregear ``f`` with ``S_f = R_{t,lam}``, ``J_f(0) = (0, 1, 0)``."""
    f = symmetric_map(p, tol)
    geo = analyze_pregear(trace_boundary(f, p.t))
    return gear_normalize(geo)[1]


@dataclass
class _Evaluator:
    target: GearParams
    tol: float
    region: RegionG
    record: list | None
    count: int = 0
    cache: dict = field(default_factory=dict)

    def __call__(self, x: np.ndarray) -> np.ndarray | None:
        t, lam = float(x[0]), float(x[1])
        if not self.region.contains(t, lam):
            raise LeftRegion(f"attempted evaluation outside the region at ({t}, {lam})")
        key = (t, lam)
        if key in self.cache:
            return self.cache[key]
        self.count += 1
        if self.record is not None:
            self.record.append(key)
        try:
            g = forward(MapParams(t, lam), self.tol)
            r = np.array([math.log(g.beta) - math.log(self.target.beta), g.gamma - self.target.gamma])
        except GearMapError:
            r = None
        self.cache[key] = r
        return r


def _fd_jacobian(F, x, fx, region: RegionG):
    J = np.empty((2, 2))
    for k in range(2):
        h = np.zeros(2)
        h[k] = FD_STEP
        xp = x + h
        if not region.contains(*xp, margin=0.0) or (k == 1 and xp[1] > region.upper(xp[0]) - region.delta):
            xp = x - h
            h = -h
        fp = F(xp)
        if fp is None:
            return None
        J[:, k] = (fp - fx) / h[k]
    return J


def _coarse_grid(F, region: RegionG, n: int = 6):
    best, bx = math.inf, None
    for t in np.linspace(0.1, math.pi / 2 - 0.1, n):
        lo, hi = region.lower(t), region.upper(t)
        for lam in np.linspace(lo + 0.05, hi - 0.05, n):
            r = F(np.array([t, lam]))
            if r is not None and np.linalg.norm(r) < best:
                best, bx = float(np.linalg.norm(r)), np.array([t, lam])
    return bx


def invert(
    target: GearParams,
    guess: tuple[float, float] | None = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = 60,
    residual: float = RESIDUAL_TOL,
    record: list | None = None,
) -> MapParams:
    """Guarded Broyden iteration for ``forward(t, lam) = target``.

    The residual is ``(log beta - log beta0, gamma - gamma0)``.  Iterates are
    clamped into the region shrunk by ``GUARD``; a failed or clamped step is
    halved, and repeated trouble restarts from the best point of a 6 x 6 grid.
    ``record``, when given, receives every evaluated ``(t, lam)``.
    """
    region = RegionG()
    F = _Evaluator(target, tol, region, record)
    x = np.array(guess if guess is not None else (math.pi / 4, 0.0), dtype=float)
    x = np.array(region.clamp(*x)[:2])
    fx = F(x)
    restarted = False
    if fx is None:
        x = _coarse_grid(F, region)
        restarted = True
        if x is None:
            raise LeftRegion("no admissible starting point found")
        fx = F(x)
    J = _fd_jacobian(F, x, fx, region)
    trouble = 0
    for _ in range(max_iter):
        if np.max(np.abs(fx)) < residual:
            return MapParams(float(x[0]), float(x[1]))
        if J is None or not np.all(np.isfinite(J)) or abs(np.linalg.det(J)) < 1e-300:
            J = _fd_jacobian(F, x, fx, region)
            if J is None:
                trouble = 99
        step = np.linalg.solve(J, -fx) if trouble < 99 else np.zeros(2)
        accepted = False
        lam_step = 1.0
        for _ in range(12):
            xt, lt, clamped = region.clamp(*(x + lam_step * step))
            xn = np.array([xt, lt])
            fn = F(xn) if np.any(xn != x) else None
            if fn is not None and np.linalg.norm(fn) < np.linalg.norm(fx):
                accepted = True
                break
            lam_step *= 0.5
        if accepted:
            s, y = xn - x, fn - fx
            J = J + np.outer(y - J @ s, s) / (s @ s)
            x, fx = xn, fn
            trouble = trouble + 1 if clamped else 0
            if np.linalg.norm(s) < 1e-3 * residual:
                J = _fd_jacobian(F, x, fx, region)
        else:
            trouble += 1
            J = _fd_jacobian(F, x, fx, region)
        if trouble >= 3:
            if restarted:
                raise LeftRegion("Broyden iteration keeps leaving the region of gearlikeness")
            restarted, trouble = True, 0
            x = _coarse_grid(F, region)
            if x is None:
                raise LeftRegion("no admissible restart point found")
            fx = F(x)
            J = _fd_jacobian(F, x, fx, region)
    if np.max(np.abs(fx)) < residual:
        return MapParams(float(x[0]), float(x[1]))
    raise MaxIterations(f"no convergence after {max_iter} iterations (residual {np.max(np.abs(fx)):.2e})")


@dataclass(frozen=True)
class LevelCurve:
    kind: str
    value: float
    branch: str
    points: tuple[tuple[float, float], ...]

    @property
    def label(self) -> str:
        name = "logbeta" if self.kind == "beta" else "gamma"
        suffix = f"/{self.branch}" if self.branch else ""
        return f"{name}={self.value:.6g}{suffix}"


class _LambdaScan:
    """(beta, gamma) along ``lam`` at fixed ``t`` via series tables, else direct integration."""

    def __init__(self, t: float, n: int, tol: float, xtol: float = 1e-12):
        from .spps import lambda_functionals

        self.t, self.tol, self.xtol = t, tol, xtol
        lo, hi = lambda_bounds(t)
        self.functional = None
        try:
            self.functional = lambda_functionals(t, tol=tol)
            lo, hi = max(lo, self.functional.domain[0]), min(hi, self.functional.domain[1])
        except GearMapError:
            pass
        pad = 2e-3 * (hi - lo)
        self.lams = np.linspace(lo + pad, hi - pad, n)
        vals = [self.gear(x) for x in self.lams]
        self.logbeta = np.array([math.log(g.beta) if g else np.nan for g in vals])
        self.gamma = np.array([g.gamma if g else np.nan for g in vals])

    def gear(self, lam: float):
        try:
            if self.functional is not None:
                return self.functional.gear(lam)
            return forward(MapParams(self.t, lam), self.tol)
        except (GearMapError, ValueError):
            return None

    def value(self, kind: str, lam: float) -> float:
        g = self.gear(lam)
        if g is None:
            return math.nan
        return math.log(g.beta) if kind == "beta" else g.gamma

    def roots(self, kind: str, level: float, lo: int, hi: int) -> list[float]:
        v = (self.logbeta if kind == "beta" else self.gamma)[lo:hi] - level
        lams = self.lams[lo:hi]
        out = []
        for i in range(len(v) - 1):
            if np.isfinite(v[i]) and np.isfinite(v[i + 1]) and v[i] * v[i + 1] <= 0 and v[i] != v[i + 1]:
                out.append(brentq(lambda x: self.value(kind, x) - level, lams[i], lams[i + 1], xtol=self.xtol))
        return out


def level_curves(
    kind: str, values, t_grid, n_scan: int = 120, tol: float = DEFAULT_TOL, xtol: float = 1e-12
) -> list[LevelCurve]:
    """Curves ``log beta = v`` (two branches) or ``gamma = v`` in the (t, lam) plane.

    Points that cannot be resolved at some ``t`` are gaps in the polyline.
    """
    if kind not in ("beta", "gamma"):
        raise ValueError("kind must be 'beta' or 'gamma'")
    values = [float(v) for v in values]
    t_grid = [float(t) for t in t_grid]
    pts: dict[tuple[float, str], list] = {}
    for t in t_grid:
        scan = _LambdaScan(t, n_scan, tol, xtol)
        for v in values:
            if kind == "gamma":
                r = scan.roots(kind, v, 0, len(scan.lams))
                if r:
                    pts.setdefault((v, ""), []).append((t, max(r)))
                continue
            if not np.any(np.isfinite(scan.logbeta)):
                continue
            k = int(np.nanargmax(scan.logbeta))
            left = scan.roots(kind, v, 0, k + 1)
            right = scan.roots(kind, v, k, len(scan.lams))
            if left:
                pts.setdefault((v, "lower"), []).append((t, min(left)))
            if right:
                pts.setdefault((v, "upper"), []).append((t, max(right)))
    curves = []
    for v in values:
        for branch in ([""] if kind == "gamma" else ["lower", "upper"]):
            p = pts.get((v, branch), [])
            if p:
                curves.append(LevelCurve(kind, v, branch, tuple(p)))
    return curves


def level_curve_intercept(curve: LevelCurve, degree: int = 2, t_max: float = 0.5) -> float:
    """Extrapolate a level curve to ``t = 0`` by a least-squares polynomial in ``t``.

    Only points with ``t <= t_max`` enter the fit; the curves bend strongly
    further out.
    """
    p = np.asarray(curve.points)
    p = p[p[:, 0] <= t_max]
    if len(p) <= degree:
        raise ValueError("not enough points to extrapolate")
    return float(np.polyval(np.polyfit(p[:, 0], p[:, 1], degree), 0.0))
