"""Goodman's singular integral, the explicit degenerate gear map, and Schwarzian probes.

For a gear map with ``f(0)`` at the gear center, outer tips ``e^{+-it1}`` and
inner corners ``e^{+-it2}``, the ratio ``f'(0) / f(1)`` equals ``2 exp(I)``
where ``I`` is the singular integral evaluated by :func:`goodman_integral`.
"""

from __future__ import annotations

import cmath
import math

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import GearMapError, NoRoot, QuadratureFailure
from .geartools import renormalized_gear_map
from .odecore import DEFAULT_TOL, MobiusMap
from .schwarzian import MapParams, eval_R_degenerate
from .solver import lambda_bounds

GOODMAN_ABS_TOL = 1e-10


def _check_angles(t1: float, t2: float) -> None:
    if not 0.0 <= t1 < t2 < math.pi:
        raise ValueError("need 0 <= t1 < t2 < pi")


def goodman_integral(t1: float, t2: float) -> float:
    """``int_0^1 (1/x - sqrt(1 - cos t2 x) / (x sqrt(1 - cos t1 x) sqrt(1 - x^2))) dx``.

    With ``x = sin th`` the integrand becomes ``(cos th - B) / sin th``,
    ``B = sqrt(1 - c2 x) / sqrt(1 - c1 x)``; rationalizing removes the ``1/x``
    cancellation and the endpoint singularity at ``x = 1``.
    """
    _check_angles(t1, t2)
    if t1 == 0.0:
        return -math.inf
    c1, c2 = math.cos(t1), math.cos(t2)

    def g(th):
        s, c = math.sin(th), math.cos(th)
        B = math.sqrt((1.0 - c2 * s) / (1.0 - c1 * s))
        return (c2 - c1 - s + c1 * s * s) / ((1.0 - c1 * s) * (c + B))

    val, err = quad(g, 0.0, math.pi / 2, epsabs=GOODMAN_ABS_TOL * 1e-2, epsrel=1e-13, limit=200)
    if err > GOODMAN_ABS_TOL:
        raise QuadratureFailure(f"Goodman integral error estimate {err:.2e}")
    return val


def goodman_ratio_integral(t1: float, t2: float) -> float:
    """``f'(0) / f(1)`` from the singular integral; 0 when the outer arc degenerates (``t1 = 0``)."""
    I = goodman_integral(t1, t2)
    return 0.0 if I == -math.inf else 2.0 * math.exp(I)


def centering_parameter(t1: float, t2: float) -> tuple[float, float]:
    """``(q, t)`` with ``T_q(e^{i t1}) = e^{i t}`` and ``T_q(e^{i t2}) = -e^{-i t}``.

    ``T_q`` carries the prevertices of a centered gear map to the symmetric
    configuration ``+-e^{+-it}``.
    """
    _check_angles(t1, t2)
    e1, e2 = cmath.exp(1j * t1), cmath.exp(1j * t2)

    def arg_sum(q):
        T = MobiusMap.disk_automorphism(q)
        return cmath.phase(T(e1)) + cmath.phase(T(e2)) - math.pi

    q = brentq(arg_sum, -1 + 1e-12, 1 - 1e-12, xtol=1e-15, rtol=1e-15)
    t = cmath.phase(MobiusMap.disk_automorphism(q)(e1))
    return q, t


def goodman_ratio_jet(t1: float, t2: float, tol: float = DEFAULT_TOL, n_scan: int = 13):
    """``f'(0) / f(1)`` from the renormalized gear map with prevertices ``e^{+-it1}``, ``e^{+-it2}``.

    The symmetric family ``(t, lam)`` is searched for the member whose
    centering automorphism matches the prevertices; ``f'(0)`` then comes from
    the propagated 2-jet and ``f(1)`` is the outer-arc midpoint.
    """
    _check_angles(t1, t2)
    if t1 == 0.0:
        return 0.0
    q_target, t = centering_parameter(t1, t2)
    lo, hi = lambda_bounds(t)
    pad = 2e-3
    lams = np.linspace(lo + pad, hi - pad, n_scan)

    def q_of(lam):
        try:
            return renormalized_gear_map(MapParams(t, lam), tol).q - q_target
        except GearMapError:
            return math.nan

    vals = np.array([q_of(x) for x in lams])
    for i in range(n_scan - 1):
        if np.isfinite(vals[i]) and np.isfinite(vals[i + 1]) and vals[i] * vals[i + 1] <= 0:
            lam = brentq(q_of, lams[i], lams[i + 1], xtol=1e-13, rtol=1e-14)
            break
    else:
        raise NoRoot(f"no member of the t={t:.6f} family is centered at the prescribed prevertices")
    g = renormalized_gear_map(MapParams(t, lam), tol)
    return float((g.jet0.d1 / g.T(g.geometry.p_1)).real)


def goodman_map(z):
    """Explicit gear map with ``S_f = R_{0, pi/3, 0}``: ``f(0) = 0, f'(0) = 1, f''(0) = 1``.

    ``(4/27)(2 (1 - z + z^2)^{3/2} - 2 + 3z + 3z^2 - 2z^3) / (z (1 - z))``.
    """
    z = np.asarray(z, dtype=complex)
    w = 1.0 - z + z * z
    num = 2.0 * w * np.sqrt(w) - 2.0 + 3.0 * z + 3.0 * z * z - 2.0 * z**3
    return 4.0 / 27.0 * num / (z * (1.0 - z))


def cauchy_derivatives(f, z0: complex, radius: float = 0.05, n: int = 64, order: int = 3) -> np.ndarray:
    """``f^(k)(z0)`` for ``k = 0..order`` from the trapezoidal rule on a circle."""
    th = 2 * math.pi * np.arange(n) / n
    vals = f(z0 + radius * np.exp(1j * th))
    coeffs = np.fft.fft(vals) / n
    k = np.arange(order + 1)
    return coeffs[: order + 1] * np.array([math.factorial(j) for j in k]) / radius**k


def numerical_schwarzian(f, z0: complex, radius: float = 0.05, n: int = 64) -> complex:
    d = cauchy_derivatives(f, z0, radius, n)
    return complex(d[3] / d[1] - 1.5 * (d[2] / d[1]) ** 2)


def fit_degenerate_lambda(f, t2: float, points) -> tuple[float, float]:
    """Least-squares ``lam`` with ``S_f = R_{0,t2,lam}`` at ``points``; returns ``(lam, max residual)``."""
    pts = np.asarray(points, dtype=complex)
    S = np.array([numerical_schwarzian(f, z) for z in pts])
    A = eval_R_degenerate(t2, 0.0, pts)
    B = eval_R_degenerate(t2, 1.0, pts) - A
    lam = float(np.real(np.vdot(B, S - A)) / np.real(np.vdot(B, B)))
    resid = float(np.max(np.abs(S - A - lam * B)))
    return lam, resid
