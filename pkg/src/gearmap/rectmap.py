"""Rectangle-side gear maps ``g = y2 / (y1 + alpha y2)`` with ``S_g = phi_{tau,mu}``.

The rectangle ``R0`` has corners ``+-omega1/2 +- omega2/2``; the right edge is
the outer arc, the top edge the upper tooth edge and the left corners, where
``phi`` has double poles, are the 3pi/2 vertices.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .curves import CurveSet
from .elliptic import PeriodLattice, elliptic_E, lattice_from_tau, module_M, wp
from .errors import NoRealRoots, NotAPregear, PoleAtVertex
from .geartools import GearParams
from .odecore import DEFAULT_TOL, integrate_segments

VERTEX_REL = 1e-10


@dataclass(frozen=True)
class RectParams:
    tau: complex
    mu: float

    def __post_init__(self):
        tau = complex(self.tau)
        if abs(tau.real) > 1e-14 * abs(tau) or tau.imag <= 0:
            raise ValueError("tau must be i times a positive number")
        object.__setattr__(self, "tau", 1j * tau.imag)


@dataclass(frozen=True)
class RectDomain:
    lattice: PeriodLattice

    @property
    def half_width(self) -> float:
        return self.lattice.omega1 / 2

    @property
    def half_height(self) -> float:
        return self.lattice.omega2.imag / 2

    def contains(self, zeta: complex) -> bool:
        return abs(zeta.real) < self.half_width and abs(zeta.imag) < self.half_height


@dataclass(frozen=True)
class CornerJets:
    """Real integration data and the assembled jets of ``y1, y2`` at ``omega3/2``."""

    b1: float
    b1p: float
    b2: float
    b2p: float
    c1: float
    c1p: float
    c2: float
    c2p: float

    @property
    def y1(self) -> tuple[complex, complex]:
        return (self.b1 * self.c1 + 1j * self.b1p * self.c2, self.b1p * self.c2p - 1j * self.b1 * self.c1p)

    @property
    def y2(self) -> tuple[complex, complex]:
        return (self.b2 * self.c1 + 1j * self.b2p * self.c2, self.b2p * self.c2p - 1j * self.b2 * self.c1p)

    @property
    def wronskian(self) -> complex:
        (u, up), (v, vp) = self.y1, self.y2
        return u * vp - v * up


@dataclass(frozen=True)
class AlphaRoots:
    roots: tuple[float, ...]
    bounded: tuple[bool, ...]
    degenerate: bool = False

    @property
    def gear_alpha(self) -> float:
        for a, b in zip(self.roots, self.bounded):
            if b:
                return a
        raise NotAPregear("no root of the alpha quadratic gives a bounded image")


def mu_from_lambda(t: float, lam: float) -> float:
    return 16.0 * lam * math.cos(t) + (3.0 + math.cos(2 * t)) / 6.0


def lambda_from_mu(t: float, mu: float) -> float:
    return (mu - (3.0 + math.cos(2 * t)) / 6.0) / (16.0 * math.cos(t))


def phi_evaluator(params: RectParams, lat: PeriodLattice):
    s1 = lat.omega3 / 2
    s2 = (lat.omega1 - lat.omega2) / 2
    scale = abs(lat.omega3)

    def phi(zeta):
        zeta = np.asarray(zeta, dtype=complex)
        a, b = zeta + s1, zeta + s2
        # poles at -omega3/2 and -(omega1 - omega2)/2; other lattice translates lie outside R0
        near = np.minimum(np.abs(a - 2 * lat.omega1 * np.round(a.real / (2 * lat.omega1))), np.abs(b))
        if np.any(np.abs(a) < VERTEX_REL * scale) or np.any(near < VERTEX_REL * scale):
            raise PoleAtVertex("phi evaluated at a left vertex of the rectangle")
        out = -4.0 * (wp(a, lat) + wp(b, lat)) + 4.0 * params.mu
        return out

    return phi


def phi(params: RectParams, lat: PeriodLattice, zeta):
    """``-4 (wp(zeta + omega3/2) + wp(zeta + (omega1 - omega2)/2)) + 4 mu``."""
    out = phi_evaluator(params, lat)(zeta)
    return complex(out) if np.ndim(out) == 0 else out


def corner_jets(params: RectParams, lat: PeriodLattice | None = None, tol: float = DEFAULT_TOL) -> CornerJets:
    lat = lat or lattice_from_tau(params.tau)
    ph = phi_evaluator(params, lat)
    w1, h = lat.omega1, lat.omega2.imag
    y0 = np.array([[1.0], [0.0], [0.0], [1.0]], dtype=complex)
    b, _ = integrate_segments(ph, [0.0], [w1 / 2], y0, tol)
    # u(s) = y(w1/2 + i s) solves 2u'' - phi u = 0, i.e. 2u'' + coeff u = 0 with coeff = -phi
    right = lambda s: -ph(w1 / 2 + 1j * s.real)
    c, _ = integrate_segments(right, [0.0], [h / 2], y0, tol)
    vals = [b[0, 0], b[1, 0], b[2, 0], b[3, 0], c[0, 0], c[1, 0], c[2, 0], c[3, 0]]
    return CornerJets(*(float(v.real) for v in vals))


def _quadratic(jets: CornerJets) -> tuple[float, float, float]:
    (z1, w1), (z2, w2) = jets.y1, jets.y2
    A = (z2 * w2.conjugate()).imag
    B = (z1 * w2.conjugate() + z2 * w1.conjugate()).imag
    C = (z1 * w1.conjugate()).imag
    return A, B, C


def alpha_quadratic_roots(A: float, B: float, C: float) -> tuple[tuple[float, ...], bool]:
    if A == 0:
        if B == 0:
            raise NoRealRoots("alpha equation is degenerate")
        return (-C / B,), False
    disc = B * B - 4 * A * C
    scale = max(B * B, abs(4 * A * C), 1e-300)
    if disc < -1e-14 * scale:
        raise NoRealRoots("alpha quadratic has no real roots: the image is not a pregear")
    if abs(disc) <= 1e-14 * scale:
        r = -B / (2 * A)
        return (r, r), True
    sq = math.sqrt(disc)
    qq = -0.5 * (B + math.copysign(sq, B))
    roots = sorted([qq / A, C / qq])
    return tuple(roots), False


class RectSolutions:
    """Normalized solutions of ``2y'' + phi y = 0`` in ``R0`` with a real-axis pass."""

    def __init__(self, params: RectParams, lat: PeriodLattice | None = None, tol: float = DEFAULT_TOL):
        self.params = params
        self.lattice = lat or lattice_from_tau(params.tau)
        self.domain = RectDomain(self.lattice)
        self.phi = phi_evaluator(params, self.lattice)
        self.tol = tol

    def real_pass(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        out = np.empty((4, xs.size), dtype=complex)
        y0 = np.array([[1.0], [0.0], [0.0], [1.0]], dtype=complex)
        out[:, xs == 0] = y0
        nz = xs != 0
        if np.any(nz):
            out[:, nz] = integrate_segments(self.phi, np.zeros(nz.sum()), xs[nz], y0, self.tol)[0]
        return out

    def vertical(self, xs, height: float, s_eval):
        """Samples at ``x + i s height`` for fractions ``s`` (shape ``(len(s), 4, len(xs))``)."""
        base = self.real_pass(xs)
        xs = np.asarray(xs, dtype=float)
        _, samples = integrate_segments(self.phi, xs.astype(complex), xs + 1j * height, base, self.tol, s_eval)
        return samples

    def corner(self) -> CornerJets:
        return corner_jets(self.params, self.lattice, self.tol)

    def alpha_roots(self, n_probe: int = 401) -> AlphaRoots:
        roots, degenerate = alpha_quadratic_roots(*_quadratic(self.corner()))
        hw = self.domain.half_width
        xs = np.linspace(-hw, hw, n_probe)
        Y = self.real_pass(xs)
        bounded = []
        for a in roots:
            den = (Y[0] + a * Y[2]).real
            # g has a pole in R0 exactly when y1 + alpha y2 vanishes on the real diameter
            bounded.append(bool(np.all(den > 0)))
        return AlphaRoots(tuple(roots), tuple(bounded), degenerate)


def alpha_roots(jets: CornerJets) -> tuple[float, ...]:
    """Real roots of the gear condition at ``omega3/2`` (without boundedness tags)."""
    return alpha_quadratic_roots(*_quadratic(jets))[0]


@dataclass
class RectGear:
    params: RectParams
    alpha: float
    center: float
    gear: GearParams
    solutions: RectSolutions

    def __call__(self, zeta):
        """g at points of R0 via the real pass followed by vertical segments."""
        zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
        Y = self.solutions.real_pass(zeta.real)
        up = zeta.imag != 0
        if np.any(up):
            e, _ = integrate_segments(self.solutions.phi, zeta.real[up].astype(complex), zeta[up], Y[:, up], self.solutions.tol)
            Y[:, up] = e
        return Y[2] / (Y[0] + self.alpha * Y[2])


def rect_gear(params: RectParams, lat: PeriodLattice | None = None, tol: float = DEFAULT_TOL) -> RectGear:
    """Bounded gear map on ``R0`` and its measured gear parameters."""
    sol = RectSolutions(params, lat, tol)
    roots = sol.alpha_roots()
    a = roots.gear_alpha
    cj = sol.corner()
    (u1, _), (u2, _) = cj.y1, cj.y2
    Y = u1 + a * u2
    gc = u2 / Y
    dg = 1.0 / Y**2
    # the upper tooth edge is the line through g(omega3/2) with direction g'(omega3/2)
    if abs(dg.imag) < 1e-14 * abs(dg):
        raise NotAPregear("tooth edge is parallel to the real axis")
    center = gc.real - gc.imag * dg.real / dg.imag
    hw = sol.domain.half_width
    Ym = sol.real_pass([-hw, hw])
    gm = (Ym[2] / (Ym[0] + a * Ym[2])).real
    outer, inner = abs(gm[1] - center), abs(gm[0] - center)
    gamma = cmath.phase(gc - center)
    return RectGear(params, a, center, GearParams(outer / inner, gamma), sol)


def map_rectangle(params: RectParams, alpha: float | None = None, grid: tuple[int, int] = (17, 9), samples: int = 33, tol: float = DEFAULT_TOL) -> CurveSet:
    """Images of the mesh lines of ``R0`` (``grid`` = vertical x horizontal line counts)."""
    nv, nh = grid
    if nv < 2 or nh < 2 or samples < 3:
        raise ValueError("grid needs at least two lines each way and three samples per line")
    sol = RectSolutions(params, None, tol)
    if alpha is None:
        alpha = sol.alpha_roots().gear_alpha
    hw, hh = sol.domain.half_width, sol.domain.half_height
    refine = 4
    ncol = (nv - 1) * refine + 1
    xs = np.linspace(-hw, hw, ncol)
    xs[0] = -hw * (1 - 1e-2)  # the left corners are singular points of the equation
    ns = (samples - 1) // 2
    nsteps = max(2 * ns, (nh - 1))
    s = np.linspace(0.0, 1.0, nsteps + 1)
    up = sol.vertical(xs, hh, s)
    down = sol.vertical(xs, -hh, s)
    g_up = up[:, 2, :] / (up[:, 0, :] + alpha * up[:, 2, :])
    g_dn = down[:, 2, :] / (down[:, 0, :] + alpha * down[:, 2, :])
    # rows: heights -hh..hh, columns: xs
    G = np.vstack([g_dn[:0:-1], g_up])
    heights = np.concatenate([-s[:0:-1], s]) * hh
    cs = CurveSet(meta={"tau": params.tau.imag, "mu": params.mu, "alpha": alpha, "grid": [nv, nh], "tol": tol})
    for j in range(nv):
        col = j * refine
        label = "outer-arc" if j == nv - 1 else ("inner-arc" if j == 0 else f"v{j:02d}")
        cs.add(label, "boundary-edge" if j in (0, nv - 1) else "mesh-line", G[:, col])
    levels = np.linspace(-hh, hh, nh)
    for k, yk in enumerate(levels):
        i = int(np.argmin(np.abs(heights - yk)))
        label = "tooth-upper" if k == nh - 1 else ("tooth-lower" if k == 0 else f"h{k:02d}")
        cs.add(label, "boundary-edge" if k in (0, nh - 1) else "mesh-line", G[i, :])
    return cs


def exterior_modulus_annular_rectangle(beta: float, gamma: float, guess=None, tol: float = DEFAULT_TOL):
    """Modulus of the exterior of the annular rectangle ``{1 < |w| < beta, |arg w| < gamma}``.

    Returns ``(modulus, t, lam)`` with ``modulus = M(t) / 2``.
    """
    from .solver import invert  # solver depends on this module's siblings only

    p = invert(GearParams(beta, gamma), guess=guess, tol=tol)
    return module_M(p.t) / 2.0, p.t, p.lam


def annular_rectangle_boundary(beta: float, gamma: float, n: int = 200) -> np.ndarray:
    """Closed polyline of the annular rectangle ``A``: radii 1 and ``beta^2``, ``gamma <= arg w <= 2 pi - gamma``."""
    th = np.linspace(gamma, 2 * math.pi - gamma, n)
    r = np.linspace(1.0, beta * beta, n)
    return np.concatenate([
        np.exp(1j * th),
        r * np.exp(-1j * gamma),
        beta * beta * np.exp(1j * th[::-1]),
        r[::-1] * np.exp(1j * gamma),
        [np.exp(1j * gamma)],
    ])


def reflection_check(t: float, lam: float, n_per_edge: int = 48, margin: float = 0.02, tol: float = DEFAULT_TOL) -> float:
    """Distance from the gear-plus-reflection boundary samples to the annular rectangle.

    The gear with inner radius 1 is reflected in its outer circle ``|w| = beta``
    (``w -> beta^2 / conj(w)``).  Its inner arc and tooth edges, together with
    their reflections, must lie on the boundary of ``A_{beta, gamma}``.
    """
    from .geartools import renormalized_gear_map
    from .schwarzian import MapParams

    g = renormalized_gear_map(MapParams(t, lam), tol).standardized()
    tr = g.trace(n_per_edge, margin)
    b, gam = g.gear.beta, g.gear.gamma
    pts = np.concatenate([np.ravel(tr.edges[k]) for k in ("tooth-upper", "inner-arc", "tooth-lower")])
    pts = np.concatenate([pts, b * b / np.conj(pts)])
    return float(np.max(distance_to_annular_rectangle(pts, b, gam)))


def _segment_distance(w: np.ndarray, a: complex, b: complex) -> np.ndarray:
    ab = b - a
    s = np.clip(((w - a) * np.conj(ab)).real / abs(ab) ** 2, 0.0, 1.0)
    return np.abs(w - (a + s * ab))


def distance_to_annular_rectangle(w, beta: float, gamma: float) -> np.ndarray:
    """Exact distance from points ``w`` to the boundary of ``A_{beta, gamma}``."""
    w = np.asarray(w, dtype=complex).ravel()
    r, th = np.abs(w), np.mod(np.angle(w), 2 * math.pi)
    on_span = (th >= gamma) & (th <= 2 * math.pi - gamma)
    R = beta * beta
    ends = np.exp(1j * gamma), np.exp(-1j * gamma)
    d = [_segment_distance(w, ends[0], R * ends[0]), _segment_distance(w, ends[1], R * ends[1])]
    for rho in (1.0, R):
        corner = np.minimum(np.abs(w - rho * ends[0]), np.abs(w - rho * ends[1]))
        d.append(np.where(on_span, np.abs(r - rho), corner))
    return np.min(d, axis=0)


def phi_z_form(t: float, mu: float, z):
    """``phi(E(z)/2)`` as a rational function of the disk variable.

    With ``tau = i M(t)`` the lattice has ``e3 = (4/3) cos 2t`` and
    ``e1 - e3 = 4 sin^2 t``, so only the simple poles at the inner corners
    ``-e^{+-it}`` remain.
    """
    c = math.cos(t)
    return -32.0 / 3.0 * math.cos(2 * t) - 64.0 * math.sin(t) ** 2 * c * z / (z * z + 2.0 * c * z + 1.0) + 4.0 * mu


def zeta_of_z(t: float, z: complex) -> complex:
    return elliptic_E(t, z) / 2.0
