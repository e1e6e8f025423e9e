"""Straight-path integration of ``2y'' + q(z) y = 0`` and exact 2-jet / Mobius algebra.

Everything here works on the complex coordinate ``z``: jets are
``(y, dy/dz)`` for solutions and ``(f, f', f'')`` for maps.  The integrator
runs a batch of straight segments through one ``solve_ivp`` call, which is how
boundary traces stay affordable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    DivisionByZeroSolution,
    InversionFailed,
    PoleAtPoint,
    PoleOnPath,
    SingularityError,
    ToleranceNotMet,
)

DEFAULT_TOL = 1e-10
WRONSKIAN_DRIFT = 1e-9
_CHUNK = 128


@dataclass(frozen=True)
class Jet1:
    value: complex
    deriv: complex


@dataclass(frozen=True)
class Jet2:
    """Value and first two derivatives of a map at a point."""

    value: complex
    d1: complex
    d2: complex

    @classmethod
    def identity(cls, z: complex = 0.0) -> "Jet2":
        return cls(complex(z), 1.0 + 0j, 0j)

    def scaled(self, s: complex) -> "Jet2":
        return Jet2(s * self.value, s * self.d1, s * self.d2)

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (complex(self.value), complex(self.d1), complex(self.d2))


@dataclass(frozen=True)
class MobiusMap:
    """``z -> (a z + b) / (c z + d)``, stored with ``ad - bc = 1``."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if det == 0:
            raise ValueError("degenerate Mobius coefficients (ad - bc = 0)")
        s = cmath.sqrt(det)
        for name in "abcd":
            object.__setattr__(self, name, complex(getattr(self, name)) / s)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, w: complex) -> "MobiusMap":
        return cls(1, w, 0, 1)

    @classmethod
    def disk_automorphism(cls, q: float) -> "MobiusMap":
        """``T_q(z) = (z - q) / (1 - q z)`` for real ``-1 < q < 1``."""
        return cls(1, -q, -q, 1)

    @classmethod
    def from_jet(cls, jet: Jet2) -> "MobiusMap":
        """The Mobius map M with ``J_M(0) = jet``."""
        a0, a1, a2 = jet.as_tuple()
        if a1 == 0:
            raise ValueError("jet with vanishing first derivative")
        k = a2 / (2 * a1)
        return cls(a1 - a0 * k, a0, -k, 1)

    @property
    def pole(self) -> complex:
        if self.c == 0:
            return complex(math.inf, 0)
        return -self.d / self.c

    def __call__(self, z):
        den = self.c * z + self.d
        if np.any(den == 0):
            raise PoleAtPoint(f"Mobius map evaluated at its pole {self.pole}")
        return (self.a * z + self.b) / den

    def deriv(self, z):
        return 1.0 / (self.c * z + self.d) ** 2

    def second_deriv(self, z):
        return -2.0 * self.c / (self.c * z + self.d) ** 3

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        """Composition ``self o other``."""
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)


@dataclass(frozen=True)
class PathSpec:
    start: complex
    end: complex

    def __post_init__(self):
        if self.start == self.end:
            raise ValueError("degenerate path: start == end")


@dataclass(frozen=True)
class OdeBasis:
    """Endpoint jets of two solutions and the Wronskian at both ends."""

    y1: Jet1
    y2: Jet1
    wronskian: complex
    wronskian_start: complex

    @property
    def drift(self) -> float:
        return abs(self.wronskian - self.wronskian_start)


def compose_jet2(outer: Jet2, inner: Jet2) -> Jet2:
    """2-jet of ``g o f`` at z0 from ``J_f(z0)`` (inner) and ``J_g(f(z0))`` (outer)."""
    a1, a2 = inner.d1, inner.d2
    b0, b1, b2 = outer.as_tuple()
    return Jet2(b0, a1 * b1, a1 * a1 * b2 + a2 * b1)


def mobius_jet(T: MobiusMap, z0: complex) -> Jet2:
    den = T.c * z0 + T.d
    if abs(den) <= 1e-14 * (abs(T.c * z0) + abs(T.d)):
        raise PoleAtPoint(f"{z0} is the pole of the Mobius map")
    return Jet2(T(z0), 1.0 / den**2, -2.0 * T.c / den**3)


def _coeff_values(coeff, z: np.ndarray) -> np.ndarray:
    try:
        k = coeff(z)
    except SingularityError as exc:
        raise PoleOnPath(str(exc)) from exc
    k = np.broadcast_to(np.asarray(k, dtype=complex), z.shape)
    if not np.all(np.isfinite(k)):
        raise PoleOnPath("ODE coefficient is not finite on the path")
    return k


def _integrate_chunk(coeff, starts, ends, y0, tol, s_eval):
    n = starts.size
    h = ends - starts

    def rhs(s, Y):
        Y = Y.reshape(4, n)
        a = -0.5 * _coeff_values(coeff, starts + s * h)
        out = np.empty_like(Y)
        out[0] = h * Y[1]
        out[1] = h * a * Y[0]
        out[2] = h * Y[3]
        out[3] = h * a * Y[2]
        return out.ravel()

    # solve_ivp uses an RMS norm over components; shrink so every component meets tol.
    rt = tol / math.sqrt(4 * n)
    t_eval = None
    if s_eval is not None:
        t_eval = np.union1d(np.asarray(s_eval, float), [1.0])
    sol = solve_ivp(rhs, (0.0, 1.0), y0.ravel(), method="DOP853", rtol=rt, atol=rt, t_eval=t_eval)
    if sol.status != 0:
        raise ToleranceNotMet(sol.message)
    Y = sol.y.reshape(4, n, -1)
    end = Y[..., -1]
    w0 = y0[0] * y0[3] - y0[2] * y0[1]
    w1 = end[0] * end[3] - end[2] * end[1]
    drift = np.abs(w1 - w0)
    if np.any(drift > WRONSKIAN_DRIFT * np.maximum(np.abs(w0), 1e-300)):
        raise ToleranceNotMet(f"Wronskian drift {drift.max():.3e} exceeds budget")
    samples = None
    if s_eval is not None:
        idx = np.searchsorted(sol.t, np.asarray(s_eval, float))
        samples = np.moveaxis(Y[..., idx], -1, 0)
    return end, samples


def integrate_segments(coeff, starts, ends, y0, tol: float = DEFAULT_TOL, s_eval=None):
    """Batch integration of ``2y'' + coeff(z) y = 0`` along ``start -> end`` segments.

    ``y0`` has shape ``(4, n)`` with rows ``y1, y1', y2, y2'`` (d/dz) at the
    starts.  Returns the endpoint array of the same shape and, when ``s_eval``
    (fractions of the segment in [0, 1]) is given, samples of shape
    ``(len(s_eval), 4, n)``.  ``coeff`` must accept complex ndarrays.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    starts = np.asarray(starts, dtype=complex).ravel()
    ends = np.asarray(ends, dtype=complex).ravel()
    starts, ends = np.broadcast_arrays(starts, ends)
    n = ends.size
    y0 = np.broadcast_to(np.asarray(y0, dtype=complex).reshape(4, -1), (4, n)).copy()
    end = np.empty((4, n), dtype=complex)
    samples = None if s_eval is None else np.empty((len(s_eval), 4, n), dtype=complex)
    for lo in range(0, n, _CHUNK):
        sl = slice(lo, min(n, lo + _CHUNK))
        e, s = _integrate_chunk(coeff, starts[sl].copy(), ends[sl].copy(), y0[:, sl], tol, s_eval)
        end[:, sl] = e
        if samples is not None:
            samples[:, :, sl] = s
    return end, samples


def integrate_basis(coeff, path: PathSpec, init1: Jet1, init2: Jet1, tol: float = DEFAULT_TOL) -> OdeBasis:
    """Endpoint jets of the solutions of ``2y'' + coeff y = 0`` with the given initial jets."""
    y0 = np.array([[init1.value], [init1.deriv], [init2.value], [init2.deriv]], dtype=complex)
    end, _ = integrate_segments(coeff, [path.start], [path.end], y0, tol)
    e = end[:, 0]
    return OdeBasis(
        Jet1(e[0], e[1]),
        Jet1(e[2], e[3]),
        e[0] * e[3] - e[2] * e[1],
        init1.value * init2.deriv - init2.value * init1.deriv,
    )


def jet_of_quotient(basis: OdeBasis) -> Jet2:
    """2-jet of ``f = y2 / y1``: ``(y2/y1, W/y1^2, -2 W y1'/y1^3)``."""
    y1, y1p = basis.y1.value, basis.y1.deriv
    scale = max(abs(y1), abs(basis.y2.value), 1e-300)
    if abs(y1) < 1e-13 * scale or y1 == 0:
        raise DivisionByZeroSolution("y1 vanishes: the quotient has a pole here")
    W = basis.wronskian
    return Jet2(basis.y2.value / y1, W / y1**2, -2 * W * y1p / y1**3)


def _quotient_jets(Y):
    y1, y1p, y2, y2p = Y
    if np.any(y1 == 0):
        raise DivisionByZeroSolution("y1 vanishes: the quotient has a pole here")
    W = y1 * y2p - y2 * y1p
    return y2 / y1, W / y1**2, -2 * W * y1p / y1**3


class DiskMap:
    """Solution of ``S_f = schwarzian`` in the unit disk with a prescribed 2-jet at 0.

    Values anywhere in the closed disk come from radial integration of the
    basis normalized by ``(1, 0)``, ``(0, 1)`` at the origin; the quotient is
    then post-composed with the Mobius map carrying ``(0, 1, 0)`` to ``jet0``.
    """

    def __init__(self, schwarzian, jet0: Jet2 = Jet2(0j, 1 + 0j, 0j), tol: float = DEFAULT_TOL):
        self.schwarzian = schwarzian
        self.jet0 = jet0
        self.tol = tol
        self.normalizer = MobiusMap.from_jet(jet0)

    def basis(self, zs, s_eval=None):
        zs = np.asarray(zs, dtype=complex).ravel()
        y0 = np.array([[1], [0], [0], [1]], dtype=complex)
        out = np.empty((4, zs.size), dtype=complex)
        out[:, zs == 0] = y0
        nz = zs != 0
        samples = None
        if np.any(nz):
            end, samples = integrate_segments(self.schwarzian, np.zeros(nz.sum()), zs[nz], y0, self.tol, s_eval)
            out[:, nz] = end
        return out, samples

    def _normalize(self, g, g1, g2):
        M = self.normalizer
        return M(g), M.deriv(g) * g1, M.deriv(g) * g2 + M.second_deriv(g) * g1 * g1

    def jets(self, zs):
        """Arrays ``(f, f', f'')`` at the points ``zs``."""
        Y, _ = self.basis(zs)
        return self._normalize(*_quotient_jets(Y))

    def jet(self, z: complex) -> Jet2:
        w, d1, d2 = self.jets([z])
        return Jet2(complex(w[0]), complex(d1[0]), complex(d2[0]))

    def __call__(self, z):
        scalar = np.ndim(z) == 0
        w = self.jets(np.atleast_1d(z))[0]
        return complex(w[0]) if scalar else w.reshape(np.shape(z))

    def ray_samples(self, z_end: complex, s):
        """Values ``f(s * z_end)`` for fractions ``s`` in (0, 1]."""
        _, samples = self.basis([z_end], s_eval=s)
        w, _, _ = self._normalize(*_quotient_jets(samples[:, :, 0].T))
        return w

    def invert_real(self, w: float, n_grid: int = 257) -> float:
        """Solve ``f(x) = w`` for ``x`` in [-1, 1]; f must be real and increasing there."""
        s = np.linspace(0.0, 1.0, n_grid)[1:]
        right = self.ray_samples(1.0, s).real
        left = self.ray_samples(-1.0, s).real
        xs = np.concatenate([-s[::-1], [0.0], s])
        fs = np.concatenate([left[::-1], [self(0.0).real], right])
        if not np.all(np.diff(fs) > 0):
            raise InversionFailed("map is not increasing on [-1, 1]")
        if not fs[0] <= w <= fs[-1]:
            raise InversionFailed(f"value {w} outside f([-1, 1]) = [{fs[0]}, {fs[-1]}]")
        i = int(np.clip(np.searchsorted(fs, w), 1, len(fs) - 1))
        lo, hi = xs[i - 1], xs[i]
        x = lo + (hi - lo) * (w - fs[i - 1]) / (fs[i] - fs[i - 1])
        for _ in range(30):
            j = self.jet(x)
            fx, dfx = j.value.real, j.d1.real
            if fx < w:
                lo = max(lo, x)
            else:
                hi = min(hi, x)
            xn = x - (fx - w) / dfx
            if not lo <= xn <= hi:
                xn = 0.5 * (lo + hi)
            if abs(xn - x) <= 1e-15 * max(1.0, abs(x)):
                return float(xn)
            x = xn
        return float(x)
