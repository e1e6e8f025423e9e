"""Disk-side Schwarzian derivatives ``R_{t,lambda}`` and their Mobius pullbacks.

Evaluators are plain callables ``z -> S(z)`` that accept complex ndarrays,
so they can be handed straight to the ODE integrator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleAtPoint, PrevertexSingularity
from .odecore import MobiusMap

SINGULAR_REL = 1e-12


@dataclass(frozen=True)
class MapParams:
    """Symmetric prevertices ``+-e^{+-it}`` and accessory parameter ``lam``."""

    t: float
    lam: float

    def __post_init__(self):
        if not 0.0 < self.t < math.pi / 2:
            raise ValueError(f"t must lie in (0, pi/2), got {self.t}")


@dataclass(frozen=True)
class AsymPrevertices:
    t1: float
    t2: float
    lam: float

    def __post_init__(self):
        if not 0.0 <= self.t1 < self.t2 < math.pi:
            raise ValueError("need 0 <= t1 < t2 < pi")


def _quartic(t: float, z):
    z2 = z * z
    den = z2 * z2 - 2.0 * math.cos(2 * t) * z2 + 1.0
    if np.any(np.abs(den) < SINGULAR_REL * (1.0 + np.abs(z2) ** 2)):
        raise PrevertexSingularity(f"z is a prevertex of R_t (t={t})")
    return den


def psi0(t: float, z):
    """``sin^2 t (z^4 - 16 cos t z^3 + (4 + 2 cos 2t) z^2 - 16 cos t z + 1) / (2 Delta^2)``."""
    c, c2 = math.cos(t), math.cos(2 * t)
    den = _quartic(t, z)
    num = (((z - 16.0 * c) * z + (4.0 + 2.0 * c2)) * z - 16.0 * c) * z + 1.0
    return math.sin(t) ** 2 * num / (2.0 * den * den)


def psi1(t: float, z):
    return -8.0 * math.cos(t) / _quartic(t, z)


def eval_R(p: MapParams, z):
    return 2.0 * (psi0(p.t, z) - p.lam * psi1(p.t, z))


def disk_schwarzian(t: float, lam: float):
    """Evaluator for ``R_{t,lam}``; ``t`` is not range-checked here."""

    def R(z):
        return 2.0 * (psi0(t, z) - lam * psi1(t, z))

    return R


def pullback(S, T: MobiusMap):
    """``z -> S(T(z)) T'(z)^2``, the Schwarzian of ``f o T`` when ``S = S_f``."""

    def pulled(z):
        den = T.c * z + T.d
        if np.any(den == 0):
            raise PoleAtPoint("pullback evaluated at the pole of T")
        return S(T(z)) / den**4

    return pulled


def eval_R_degenerate(t2: float, lam: float, z):
    """Limit ``t1 -> 0`` of the Schwarzian: a circular triangle with vertex prevertex at 1.

    ``8 lam (1 - cos t2) / ((z - 1)^2 Q) + 5 sin^2 t2 / (2 Q^2)`` with
    ``Q = z^2 - 2 cos t2 z + 1``.  The double pole at 1 has coefficient
    ``4 lam``, i.e. interior angle ``pi sqrt(1 - 8 lam)`` there, and the poles at
    ``e^{+-i t2}`` carry the 3pi/2 coefficient ``-5/8``.
    """
    c = math.cos(t2)
    z = np.asarray(z, dtype=complex) if np.ndim(z) else complex(z)
    Q = z * z - 2.0 * c * z + 1.0
    zm = (z - 1.0) ** 2
    scale = 1.0 + np.abs(z) ** 2
    if np.any(np.abs(Q) < SINGULAR_REL * scale) or np.any(np.abs(zm) < SINGULAR_REL * scale):
        raise PrevertexSingularity("z is a vertex prevertex of the degenerate Schwarzian")
    return 8.0 * lam * (1.0 - c) / (zm * Q) + 5.0 * math.sin(t2) ** 2 / (2.0 * Q * Q)


def triangle_schwarzian(t2: float, gamma: float, z):
    """Schwarzian of the circular triangle with angles 3pi/2, 3pi/2, 2 gamma at ``e^{+-i t2}``, 1."""
    c = math.cos(t2)
    k2 = (2.0 * gamma / math.pi) ** 2
    Q = z * z - 2.0 * c * z + 1.0
    zm = (z - 1.0) ** 2
    first = k2 * (c - 1.0) / (zm * Q)
    second = (c - 1.0) * ((5 * z * z - 14 * z + 5) * c + 7 * z * z - 10 * z + 7) / (2.0 * zm * Q * Q)
    return first - second


def prevertices(t: float) -> np.ndarray:
    """Prevertices of ``R_t`` in the order outer-upper, inner-upper, inner-lower, outer-lower."""
    e = np.exp(1j * t)
    return np.array([e, -np.conj(e), -e, np.conj(e)])
