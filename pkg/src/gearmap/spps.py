"""Spectral parameter power series for ``y'' + Psi0 y = lam Psi1 y`` along the three rays.

On the ray ``z = r d`` (``d`` in ``1, i, -1``) the disk equation becomes
``eta'' + Psi0 eta = lam Psi1 eta`` with ``Psi_k(r) = d^2 psi_k(r d)``.  Given a
nonvanishing seed solution ``y_inf`` at ``lam_inf``, both normalized solutions
are power series in ``lam - lam_inf`` whose coefficients are iterated
integrals of ``q0 = 1 / y_inf^2`` and ``q1 = Psi1 y_inf^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.optimize import brentq

from .errors import NoRoot, SeedVanishes, TailTooLarge
from .odecore import DEFAULT_TOL, Jet1, Jet2, OdeBasis, integrate_segments
from .geartools import (
    BoundaryTrace,
    GearParams,
    analyze_pregear,
    concentric_centers,
    curvature_at,
    gear_normalize,
)
from .schwarzian import psi0, psi1

RAYS = (1.0 + 0j, 1j, -1.0 + 0j)
DEFAULT_ORDER = 50
MAX_ORDER = 400
DEFAULT_GRID = 2000
TAIL_TOL = 1e-14
RESOLUTION_TOL = 1e-11


class ResolutionTooCoarse(TailTooLarge):
    """The quadrature grid cannot resolve the iterated integrals."""


def lambda_region(t: float) -> tuple[float, float]:
    lm = -0.25 - (math.cos(t) + 1.0 / math.cos(t)) / 16.0
    return lm, lm + 0.5


@dataclass(frozen=True)
class SppsTable:
    """Iterated integrals on one ray; ``X[n]`` and ``Xt[n]`` are grid arrays, ``n = 0..2N+1``."""

    t: float
    direction: complex
    r: np.ndarray
    y_inf: np.ndarray
    dy_inf: np.ndarray
    lambda_inf: float
    X: np.ndarray
    Xt: np.ndarray
    order: int
    radius: float

    def term_sizes(self, dlam: float) -> np.ndarray:
        """sup over the grid of the k-th terms of both series, k = 0..N."""
        k = np.arange(self.order + 1)
        a = np.abs(self.X[1::2]).max(axis=1)
        b = np.abs(self.Xt[0::2]).max(axis=1)
        return np.abs(dlam) ** k * np.maximum(a, b)


def _csimpson(y: np.ndarray, r: np.ndarray) -> np.ndarray:
    # cumulative_simpson drops imaginary parts, so integrate them separately
    out = cumulative_simpson(y.real, x=r, initial=0.0)
    if np.iscomplexobj(y):
        out = out + 1j * cumulative_simpson(y.imag, x=r, initial=0.0)
    return out


def _iterated(q0: np.ndarray, q1: np.ndarray, r: np.ndarray, nmax: int) -> np.ndarray:
    out = np.empty((nmax + 1, r.size), dtype=complex)
    out[0] = 1.0
    for n in range(1, nmax + 1):
        q = q0 if n % 2 == 1 else q1
        out[n] = _csimpson(out[n - 1] * q, r)
    return out


def _check_resolution(q: np.ndarray, r: np.ndarray) -> None:
    fine = _csimpson(q, r)[-1]
    coarse = _csimpson(q[::2], r[::2])[-1]
    if abs(fine - coarse) / 15.0 > RESOLUTION_TOL * max(1.0, abs(fine)):
        raise ResolutionTooCoarse(f"Simpson error estimate {abs(fine - coarse) / 15:.2e} on the grid")


def _seed(coef0, coef1, lam_inf, direction, grid, tol):
    """``eta(0) = 1, eta'(0) = 0`` solution of ``eta'' + (Psi0 - lam_inf Psi1) eta = 0`` on the grid."""
    d = complex(direction)

    def coeff(z):
        # z-form of the same equation: 2 y_zz + 2 (psi0 - lam psi1) y = 0
        return 2.0 * (coef0(z) - lam_inf * coef1(z))

    s = np.linspace(0.0, 1.0, grid + 1)
    _, samples = integrate_segments(coeff, [0j], [d], np.array([1, 0, 0, 1], dtype=complex), tol, s_eval=s)
    y = samples[:, 0, 0]
    dy = samples[:, 1, 0] * d
    return s, y, dy


def build_spps(
    t: float,
    lambda_inf: float | None = None,
    N: int = DEFAULT_ORDER,
    grid: int = DEFAULT_GRID,
    direction: complex = 1.0,
    radius: float | None = None,
    tol: float = DEFAULT_TOL,
    coefficients=None,
    adaptive: bool = True,
    tail_tol: float = TAIL_TOL,
) -> SppsTable:
    """Tables of ``X^(n)``, ``X~^(n)`` on the ray towards ``direction``.

    ``radius`` is the largest ``|lam - lam_inf|`` the table must serve
    (default: half the width of the admissible region, so the whole region
    is covered from its midpoint).  ``coefficients`` replaces
    ``(psi0, psi1)`` as functions of ``z``; it exists for closed-form checks.
    """
    if grid % 2:
        raise ValueError("grid must be even for Simpson's rule")
    if coefficients is None:
        lm, lp = lambda_region(t)
        lambda_inf = 0.5 * (lm + lp) if lambda_inf is None else lambda_inf
        radius = 0.25 if radius is None else radius
        coefficients = (lambda z: psi0(t, z), lambda z: psi1(t, z))
    else:
        lambda_inf = 0.0 if lambda_inf is None else lambda_inf
        radius = 1.0 if radius is None else radius
    c0, c1 = coefficients
    d = complex(direction)
    r, y, dy = _seed(c0, c1, lambda_inf, d, grid, tol)
    if np.min(np.abs(y)) < 1e-8:
        raise SeedVanishes(f"seed solution at lambda_inf={lambda_inf} vanishes on the ray {d}")
    Psi1 = d * d * np.asarray(c1(r * d), dtype=complex) * np.ones_like(r)
    q0 = 1.0 / y**2
    q1 = Psi1 * y**2
    _check_resolution(q0, r)
    _check_resolution(q1, r)
    while True:
        X = _iterated(q0, q1, r, 2 * N + 1)
        Xt = _iterated(q1, q0, r, 2 * N + 1)
        table = SppsTable(t, d, r, y, dy, lambda_inf, X, Xt, N, radius)
        sizes = table.term_sizes(radius)
        if np.all(np.isfinite(sizes)) and sizes[-1] <= tail_tol * max(sizes[0], 1.0):
            return table
        if not adaptive or 2 * N > MAX_ORDER:
            raise TailTooLarge(f"order-{N} tail {sizes[-1]:.2e} too large for |dlam| <= {radius}")
        N *= 2


def _series(table: SppsTable, lam: float, idx=-1):
    dl = lam - table.lambda_inf
    if abs(dl) > table.radius * (1 + 1e-12):
        raise TailTooLarge(f"|lam - lam_inf| = {abs(dl)} exceeds the validated radius {table.radius}")
    k = np.arange(table.order + 1)
    p = dl**k
    X, Xt = table.X[:, idx], table.Xt[:, idx]
    s1 = p @ Xt[0::2]
    s2 = p @ X[1::2]
    # derivative sums: X~^(2k)' = X~^(2k-1) q0 and X^(2k+1)' = X^(2k) q0
    ds1 = p[1:] @ Xt[1:-1:2]
    ds2 = p @ X[0:-1:2]
    return s1, s2, ds1, ds2


def eval_solutions(table: SppsTable, lam: float, idx: int = -1) -> OdeBasis:
    """z-jets of the normalized solutions at the grid point ``idx`` (default the ray end)."""
    s1, s2, ds1, ds2 = _series(table, lam, idx)
    y, dy = table.y_inf[idx], table.dy_inf[idx]
    e1, e2 = y * s1, y * s2
    de1 = dy * s1 + ds1 / y
    de2 = dy * s2 + ds2 / y
    d = table.direction
    # back to z: y2 carries a factor d so that dy2/dz = 1 at the origin, and d/dz = (1/d) d/dr
    y1 = Jet1(complex(e1), complex(de1 / d))
    y2 = Jet1(complex(d * e2), complex(de2))
    W = y1.value * y2.deriv - y2.value * y1.deriv
    return OdeBasis(y1, y2, W, 1.0 + 0j)


def quotient_jet(basis: OdeBasis) -> Jet2:
    y1, y1p = basis.y1.value, basis.y1.deriv
    W = basis.wronskian
    return Jet2(basis.y2.value / y1, W / y1**2, -2 * W * y1p / y1**3)


class LambdaFunctional:
    """kappa, beta, gamma of the pregear as functions of ``lam`` from series jets."""

    def __init__(self, t: float, tables: dict):
        self.t = t
        self.tables = tables
        lm, lp = lambda_region(t)
        lam_inf = tables[1j].lambda_inf
        rad = min(tab.radius for tab in tables.values())
        self.domain = (max(lm, lam_inf - rad), min(lp, lam_inf + rad))

    def jet(self, direction: complex, lam: float) -> Jet2:
        return quotient_jet(eval_solutions(self.tables[direction], lam))

    def trace(self, lam: float) -> BoundaryTrace:
        jets = {d: self.jet(d, lam) for d in RAYS}
        return BoundaryTrace({d: d for d in RAYS}, jets)

    def kappa(self, lam: float) -> float:
        return curvature_at(self.jet(1j, lam), 1j)

    def center_gap(self, lam: float) -> float:
        cm, c1 = concentric_centers(self.trace(lam))
        return float((c1 - cm).real)

    def gear(self, lam: float) -> GearParams:
        return gear_normalize(analyze_pregear(self.trace(lam)))[1]

    def beta(self, lam: float) -> float:
        return self.gear(lam).beta

    def gamma(self, lam: float) -> float:
        return self.gear(lam).gamma


def lambda_functionals(
    t: float, N: int = DEFAULT_ORDER, grid: int = DEFAULT_GRID, tol: float = DEFAULT_TOL, tail_tol: float = TAIL_TOL
) -> LambdaFunctional:
    tables = {d: build_spps(t, N=N, grid=grid, direction=d, tol=tol, tail_tol=tail_tol) for d in RAYS}
    return LambdaFunctional(t, tables)


def solve_kappa_zero(
    t: float, target: float = 0.0, functional: LambdaFunctional | None = None, n_scan: int = 200, xtol: float = 1e-12
) -> float:
    """Largest ``lam`` in the admissible interval with ``kappa(lam) = target``."""
    F = functional or lambda_functionals(t)
    lo, hi = F.domain
    pad = 1e-6 * (hi - lo)
    lams = np.linspace(lo + pad, hi - pad, n_scan)
    vals = np.array([F.kappa(x) - target for x in lams])
    sign = np.sign(vals)
    idx = np.nonzero(sign[:-1] * sign[1:] <= 0)[0]
    if idx.size == 0:
        raise NoRoot(f"kappa - {target} does not change sign on ({lo}, {hi})")
    i = idx[-1]
    if vals[i + 1] == 0:
        return float(lams[i + 1])
    return float(brentq(lambda x: F.kappa(x) - target, lams[i], lams[i + 1], xtol=xtol, rtol=1e-15))
