"""Boundary traces, curvature, pregear analysis and the renormalized gear map.

A symmetric map ``f`` with ``S_f = R_{t,lam}`` sends the disk onto a pregear.
The real Mobius map ``T`` that straightens the tooth edges is found from the
curvature of the upper tooth edge at ``f(i)``; precomposing with the disk
automorphism ``T_q`` then puts the gear center at ``h(0) = 0``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .curves import CurveSet
from .errors import InversionFailed, NotAPregear, NotCentered, ZeroDerivative
from .odecore import DEFAULT_TOL, DiskMap, Jet2, MobiusMap, compose_jet2, mobius_jet
from .schwarzian import MapParams, disk_schwarzian, pullback

STRAIGHT_KAPPA = 1e-9
EDGES = ("outer-arc", "tooth-upper", "inner-arc", "tooth-lower")


@dataclass(frozen=True)
class GearParams:
    """Gear ratio ``beta`` (outer over inner radius) and tooth half-angle ``gamma``."""

    beta: float
    gamma: float

    def __post_init__(self):
        if not self.beta > 1.0:
            raise ValueError(f"gear ratio must exceed 1, got {self.beta}")
        if not 0.0 < self.gamma < math.pi:
            raise ValueError(f"gear angle must lie in (0, pi), got {self.gamma}")


@dataclass(frozen=True)
class PregearGeometry:
    p_minus1: float
    p_1: float
    kappa: float
    rho: float
    p: complex
    v: complex
    c: complex
    d: float
    b_minus: float
    b_plus: float
    interior: str  # "minus" or "plus": which of b-/b+ lies in (p_minus1, p_1)

    @property
    def b_interior(self) -> float:
        return self.b_minus if self.interior == "minus" else self.b_plus


def edge_intervals(t: float) -> dict[str, tuple[float, float]]:
    """Parameter angles of the four boundary edges of the symmetric configuration."""
    return {
        "outer-arc": (-t, t),
        "tooth-upper": (t, math.pi - t),
        "inner-arc": (math.pi - t, math.pi + t),
        "tooth-lower": (math.pi + t, 2 * math.pi - t),
    }


def edge_angles(t: float, n: int, margin: float = 0.02) -> dict[str, np.ndarray]:
    """``n`` angles per edge, keeping a fraction ``margin`` of each edge clear of the prevertices."""
    out = {}
    for name, (a, b) in edge_intervals(t).items():
        u = np.linspace(margin, 1.0 - margin, n)
        out[name] = a + (b - a) * u
    return out


@dataclass
class BoundaryTrace:
    """Jets at the parameter points over ``1, -1, i`` and sampled boundary edges.

    ``nodes`` and ``jets`` are keyed by the symmetric-configuration points
    ``1, -1, 1j``; for a precomposed map the actual parameter points differ
    and are stored in ``nodes``.
    """

    nodes: dict
    jets: dict
    edges: dict = field(default_factory=dict)

    def symmetry_error(self) -> float:
        if not self.edges:
            return 0.0
        up, lo = self.edges["tooth-upper"], self.edges["tooth-lower"]
        outer = self.edges["outer-arc"]
        inner = self.edges["inner-arc"]
        errs = [np.abs(up - np.conj(lo[::-1])).max(), np.abs(outer - np.conj(outer[::-1])).max()]
        errs.append(np.abs(inner - np.conj(inner[::-1])).max())
        return float(max(errs))

    def curveset(self, meta: dict | None = None) -> CurveSet:
        cs = CurveSet(meta=dict(meta or {}))
        for name in EDGES:
            if name in self.edges:
                cs.add(name, "boundary-edge", self.edges[name])
        return cs


def trace_boundary(dmap, t: float, n_per_edge: int = 0, margin: float = 0.02, param=None) -> BoundaryTrace:
    """Trace ``dmap`` (anything with ``jets``) on the symmetric configuration's boundary.

    ``param`` maps symmetric-configuration points to the map's own parameter
    (identity by default); it must preserve the unit circle.
    """
    param = param or (lambda z: z)
    keys = (1.0 + 0j, -1.0 + 0j, 1j)
    pts = [complex(param(k)) for k in keys]
    zs = list(pts)
    angles = edge_angles(t, n_per_edge, margin) if n_per_edge else {}
    for name in EDGES if n_per_edge else ():
        zs.extend(param(np.exp(1j * angles[name])))
    w, d1, d2 = dmap.jets(np.asarray(zs))
    jets = {k: Jet2(complex(w[i]), complex(d1[i]), complex(d2[i])) for i, k in enumerate(keys)}
    nodes = dict(zip(keys, pts))
    edges = {}
    pos = 3
    for name in EDGES if n_per_edge else ():
        edges[name] = np.asarray(w[pos : pos + n_per_edge])
        pos += n_per_edge
    return BoundaryTrace(nodes, jets, edges)


def curvature_at(jet: Jet2, z0: complex) -> float:
    """Signed curvature of the image of the unit circle at ``f(z0)``.

    Positive when the boundary bends towards the image domain (a disk has
    ``kappa = 1 / radius``); the circle center is then ``f(z0) + n / kappa``
    with the inward normal ``n = -z0 f'(z0) / |f'(z0)|``.
    """
    if abs(jet.d1) < 1e-300 or not math.isfinite(abs(jet.d1)):
        raise ZeroDerivative("f' vanishes at the curvature point")
    return float((1.0 + z0 * jet.d2 / jet.d1).real / abs(jet.d1))


def inward_normal(jet: Jet2, z0: complex) -> complex:
    return complex(-z0 * jet.d1 / abs(jet.d1))


def curvature_center(jet: Jet2, z0: complex) -> complex:
    k = curvature_at(jet, z0)
    if k == 0:
        return complex(math.inf, math.inf)
    return jet.value + inward_normal(jet, z0) / k


def circle_axis_points(p: complex, v: complex, kappa: float) -> tuple[float, float, float]:
    """``(d, b-, b+)`` for the circle through ``p`` with inward normal ``v`` and curvature ``kappa``.

    The interior root is taken from the power of the origin,
    ``b- b+ = |c|^2 - rho^2 = |p|^2 + 2 Re(conj(p) v) / kappa``, which stays
    accurate when the circle is nearly a line.
    """
    c = p + v / kappa
    rho = 1.0 / abs(kappa)
    d2 = (rho - abs(c.imag)) * (rho + abs(c.imag))
    if d2 < 0:
        raise NotAPregear("tooth circles do not meet the real axis")
    d = math.sqrt(d2)
    big = c.real + math.copysign(d, c.real)
    power = abs(p) ** 2 + 2.0 * (p.conjugate() * v).real / kappa
    small = power / big if big != 0 else c.real - d
    return d, min(big, small), max(big, small)


def analyze_pregear(trace: BoundaryTrace) -> PregearGeometry:
    j1, jm, ji = trace.jets[1.0 + 0j], trace.jets[-1.0 + 0j], trace.jets[1j]
    pm1, p1 = float(jm.value.real), float(j1.value.real)
    if not pm1 < p1:
        raise NotAPregear("f(-1) < f(1) fails")
    zi = trace.nodes[1j]
    kappa = curvature_at(ji, zi)
    v = inward_normal(ji, zi)
    p = ji.value
    if abs(kappa) < STRAIGHT_KAPPA:
        return PregearGeometry(pm1, p1, kappa, math.inf, p, v, complex(math.inf), math.inf, -math.inf, math.inf, "gear")
    d, bm, bp = circle_axis_points(p, v, kappa)
    inside_m, inside_p = pm1 < bm < p1, pm1 < bp < p1
    if inside_m == inside_p:
        raise NotAPregear("need exactly one of b-, b+ inside (p_-1, p_1)")
    c = p + v / kappa
    return PregearGeometry(pm1, p1, kappa, 1.0 / abs(kappa), p, v, c, d, bm, bp, "minus" if inside_m else "plus")


def concentric_centers(trace: BoundaryTrace) -> tuple[complex, complex]:
    """Curvature centers of the non-tooth arcs at ``f(-1)`` and ``f(1)``.

    They coincide exactly when the tooth edges are straight.
    """
    cm = curvature_center(trace.jets[-1.0 + 0j], trace.nodes[-1.0 + 0j])
    c1 = curvature_center(trace.jets[1.0 + 0j], trace.nodes[1.0 + 0j])
    return cm, c1


def normalizer(geo: PregearGeometry) -> MobiusMap:
    """Real Mobius map sending the interior axis point to 0 and the exterior one to infinity."""
    if geo.interior == "gear":
        # straight edges already: the tooth lines cross the axis at the gear center
        tang = 1j * geo.v
        w0 = geo.p.real - geo.p.imag * tang.real / tang.imag
        return MobiusMap.translation(-w0)
    bm, bp = geo.b_minus, geo.b_plus
    if geo.interior == "minus":
        return MobiusMap(-1, bm, 1, -bp)
    return MobiusMap(1, -bp, 1, -bm)


def gear_normalize(geo: PregearGeometry, trace: BoundaryTrace | None = None) -> tuple[MobiusMap, GearParams]:
    T = normalizer(geo)
    outer, inner = T(geo.p_1), T(geo.p_minus1)
    if not (outer.real > 0 > inner.real):
        raise NotAPregear("normalized arcs do not straddle the gear center")
    beta = abs(outer) / abs(inner)
    gamma = cmath.phase(T(geo.p))
    if not (beta > 1.0 and 0.0 < gamma < math.pi):
        raise NotAPregear(f"measured (beta, gamma) = ({beta}, {gamma}) is not a gear")
    return T, GearParams(beta, gamma)


def gear_center(geo: PregearGeometry) -> float:
    return float(normalizer(geo).inverse()(0.0).real)


@dataclass
class GearMap:
    """Gear mapping ``h = T o f o T_q`` with ``h(0) = 0`` at the gear center.

    ``scale`` post-multiplies the map; :meth:`standardized` picks the scale
    with inner radius 1.
    """

    params: MapParams
    geometry: PregearGeometry
    T: MobiusMap
    q: float
    gear: GearParams
    disk: DiskMap
    scale: float = 1.0

    @property
    def jet0(self) -> Jet2:
        return self.disk.jet0.scaled(self.scale)

    @property
    def Tq(self) -> MobiusMap:
        return MobiusMap.disk_automorphism(self.q)

    def param_of(self, z):
        """Parameter of ``h`` over the symmetric-configuration point ``z``."""
        return MobiusMap.disk_automorphism(-self.q)(z)

    def jets(self, zs):
        w, d1, d2 = self.disk.jets(zs)
        return self.scale * w, self.scale * d1, self.scale * d2

    def __call__(self, z):
        return self.scale * self.disk(z)

    def inner_radius(self) -> float:
        return self.scale * abs(self.T(self.geometry.p_minus1))

    def standardized(self) -> "GearMap":
        return GearMap(self.params, self.geometry, self.T, self.q, self.gear, self.disk, self.scale / self.inner_radius())

    def prevertices(self) -> np.ndarray:
        t = self.params.t
        e = np.exp(1j * t)
        return self.param_of(np.array([e, -np.conj(e), -e, np.conj(e)]))

    def trace(self, n_per_edge: int = 64, margin: float = 0.02) -> BoundaryTrace:
        return trace_boundary(self, self.params.t, n_per_edge, margin, param=self.param_of)


def symmetric_map(p: MapParams, tol: float = DEFAULT_TOL) -> DiskMap:
    return DiskMap(disk_schwarzian(p.t, p.lam), Jet2(0j, 1 + 0j, 0j), tol)


def renormalized_gear_map(p: MapParams, tol: float = DEFAULT_TOL) -> GearMap:
    f = symmetric_map(p, tol)
    geo = analyze_pregear(trace_boundary(f, p.t))
    T, gear = gear_normalize(geo)
    w0 = gear_center(geo)
    try:
        x = f.invert_real(w0)
    except InversionFailed as exc:
        raise InversionFailed(f"gear center {w0} not attained on [-1, 1]: {exc}") from exc
    q = -x
    Tq = MobiusMap.disk_automorphism(q)
    inner = compose_jet2(f.jet(x), mobius_jet(Tq, 0.0))
    jet0 = compose_jet2(mobius_jet(T, inner.value), inner)
    h = DiskMap(pullback(f.schwarzian, Tq), jet0, tol)
    return GearMap(p, geo, T, q, gear, h)


def reposition_center(t1: float, t2: float, lam: float, f: DiskMap, w0: float):
    """Precompose ``f`` with ``T_{-p}``, ``p = f^{-1}(w0)``, so the new map sends 0 to ``w0``.

    Returns the new prevertex angles ``(t1', t2')`` with
    ``T_{-p}(e^{i t_k'}) = e^{i t_k}`` and the composed map.
    """
    p = f.invert_real(w0) if w0 != f.jet0.value else 0.0
    Tp, Tmp = MobiusMap.disk_automorphism(p), MobiusMap.disk_automorphism(-p)
    t1n = cmath.phase(Tp(cmath.exp(1j * t1)))
    t2n = cmath.phase(Tp(cmath.exp(1j * t2)))
    jet = compose_jet2(f.jet(p), mobius_jet(Tmp, 0.0))
    F = DiskMap(pullback(f.schwarzian, Tmp), jet, f.tol)
    return t1n, t2n, F


@dataclass
class MultiToothMap:
    """``f_n(z) = z (h(z^n) / z^n)^{1/n}`` for a centered gear map ``h``."""

    base: GearMap
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        h0 = self.base.jet0
        if abs(h0.value) > 1e-9 * abs(h0.d1):
            raise NotCentered(f"base map sends 0 to {h0.value}, not to the gear center")

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        zn = z**self.n
        out = np.empty_like(z)
        small = np.abs(z) < 1e-300
        out[small] = 0
        if np.any(~small):
            hz = self.base(zn[~small])
            out[~small] = z[~small] * (hz / zn[~small]) ** (1.0 / self.n)
        return complex(out) if out.ndim == 0 else out

    def boundary(self, n_per_edge: int = 48, margin: float = 0.02) -> CurveSet:
        tr = self.base.trace(n_per_edge, margin)
        t = self.base.params.t
        angles = edge_angles(t, n_per_edge, margin)
        cs = CurveSet(meta={"n_teeth": self.n, "t": t, "lambda": self.base.params.lam})
        for name in EDGES:
            w = tr.edges[name]
            phi = np.angle(self.base.param_of(np.exp(1j * angles[name])))
            if name == "inner-arc":
                phi = np.mod(phi, 2 * math.pi)
            # principal branch of arg(h(z)/z) keeps arg w continuous along each edge
            arg = phi + np.angle(w * np.exp(-1j * phi))
            root = np.abs(w) ** (1.0 / self.n) * np.exp(1j * arg / self.n)
            for k in range(self.n):
                cs.add(f"{name}-{k:02d}", "boundary-edge", root * cmath.exp(2j * math.pi * k / self.n))
        return cs


def multitooth(gmap: GearMap, n: int) -> tuple[MultiToothMap, CurveSet]:
    m = MultiToothMap(gmap, n)
    return m, m.boundary()
