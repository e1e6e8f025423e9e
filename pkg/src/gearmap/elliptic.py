"""Elliptic integral E(z), conformal module M(t) and the normalized Weierstrass lattice.

``E(z) = int_0^z (z^4 - 2 cos 2t z^2 + 1)^{-1/2} dz`` maps the disk onto a
rectangle; the lattice used by the rectangle Schwarzian is rescaled so that
``e1 - e2 = 4``.  With that convention ``E(1)`` equals ``omega1`` for
``tau = i M(t)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import BranchAmbiguity, LatticePointPole, QuadratureFailure

_QUAD = dict(epsabs=1e-14, epsrel=1e-13, limit=200)


def _sqrt_delta(t: float, z):
    # (1 - z^2 e^{-2it})(1 - z^2 e^{2it}); each factor has positive real part in the disk,
    # so the product of principal roots is the branch equal to 1 at the origin.
    a = cmath.exp(2j * t)
    z2 = z * z
    return np.sqrt(1 - z2 * a.conjugate()) * np.sqrt(1 - z2 * a)


def _cquad(f, a: float, b: float) -> complex:
    re, er = quad(lambda s: f(s).real, a, b, **_QUAD)
    im, ei = quad(lambda s: f(s).imag, a, b, **_QUAD)
    if max(er, ei) > 1e-9:
        raise QuadratureFailure(f"quadrature error estimate {max(er, ei):.2e}")
    return complex(re, im)


def elliptic_E(t: float, z: complex) -> complex:
    """E(z) along the straight path from 0, for z in the closed unit disk."""
    if not 0.0 < t < math.pi / 2:
        raise ValueError("t must lie in (0, pi/2)")
    z = complex(z)
    if abs(z) > 1.0 + 1e-12:
        raise BranchAmbiguity("E is only defined by straight paths inside the closed disk")
    if z == 0:
        return 0j
    if abs(z) < 0.5:
        return _cquad(lambda s: z / _sqrt_delta(t, s * z), 0.0, 1.0)
    # s = 1 - u^2 removes an inverse square-root endpoint singularity at a prevertex
    return _cquad(lambda u: 2 * u * z / _sqrt_delta(t, (1 - u * u) * z), 0.0, 1.0)


def module_M(t: float) -> float:
    """Side ratio ``Im E(i) / E(1)`` of the image rectangle."""
    if not 0.0 < t < math.pi / 2:
        raise ValueError("t must lie in (0, pi/2)")
    c2 = math.cos(2 * t)
    width = quad(lambda x: 1.0 / math.sqrt((x * x - c2) ** 2 + 1 - c2 * c2), 0.0, 1.0, **_QUAD)[0]
    height = quad(lambda y: 1.0 / math.sqrt((y * y + c2) ** 2 + 1 - c2 * c2), 0.0, 1.0, **_QUAD)[0]
    return height / width


@dataclass(frozen=True)
class PeriodLattice:
    """Rectangular lattice ``2 omega1 Z + 2 omega2 Z`` with ``e1 - e2 = 4``."""

    omega1: float
    omega2: complex
    e1: float
    e2: float
    e3: float

    @property
    def omega3(self) -> complex:
        return self.omega1 + self.omega2

    @property
    def tau(self) -> complex:
        return self.omega2 / self.omega1


def _invariants(nu: float) -> tuple[float, float]:
    """(g2, g3) for half-periods 1 and i nu, via Eisenstein q-series."""
    if nu < 1.0:
        # rotate the lattice by -i: g2 is unchanged, g3 flips sign, omega1 becomes nu
        g2, g3 = _invariants(1.0 / nu)
        return g2 / nu**4, -g3 / nu**6
    q2 = math.exp(-2 * math.pi * nu)
    s3 = s5 = 0.0
    n = 1
    while True:
        qn = q2**n
        term3 = n**3 * qn / (1 - qn)
        s3 += term3
        s5 += n**5 * qn / (1 - qn)
        if n**5 * qn < 1e-18:
            break
        n += 1
    g2 = math.pi**4 / 12 * (1 + 240 * s3)
    g3 = math.pi**6 / 216 * (1 - 504 * s5)
    return g2, g3


def lattice_from_tau(tau: complex) -> PeriodLattice:
    tau = complex(tau)
    if abs(tau.real) > 1e-14 * abs(tau) or tau.imag <= 0:
        raise ValueError("tau must be purely imaginary with positive imaginary part")
    nu = tau.imag
    g2, g3 = _invariants(nu)
    r = np.sort(np.roots([4.0, 0.0, -g2, -g3]).real)[::-1]
    e1, e3, e2 = r
    c = math.sqrt((e1 - e2) / 4.0)
    return PeriodLattice(c, 1j * nu * c, e1 / c**2, e2 / c**2, e3 / c**2)


def _wp_fourier(z: np.ndarray, w1: float, nu: float) -> np.ndarray:
    # half-periods w1 and i nu w1 with nu >= 1; z reduced so |Im z| <= nu w1
    q2 = math.exp(-2 * math.pi * nu)
    N = int(math.ceil(40.0 / (math.pi * nu))) + 2
    n = np.arange(1, N + 1)
    a = n * q2**n / (1 - q2**n)
    k = (math.pi / (2 * w1)) ** 2
    eta = k / 3.0 * (1 - 24 * a.sum())
    cos_terms = np.cos(np.multiply.outer(z, n) * (math.pi / w1)) @ a
    return -eta + k / np.sin(math.pi * z / (2 * w1)) ** 2 - 8 * k * cos_terms


def wp(z, lat: PeriodLattice):
    """Weierstrass p-function of the lattice (vectorized over z)."""
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    w1, h = lat.omega1, lat.omega2.imag
    zr = z - 2 * w1 * np.round(z.real / (2 * w1)) - 2j * h * np.round(z.imag / (2 * h))
    if np.any(np.abs(zr) < 1e-14 * w1):
        raise LatticePointPole("wp evaluated at a lattice point")
    if h >= w1:
        out = _wp_fourier(zr, w1, h / w1)
    else:
        out = -_wp_fourier(-1j * zr, h, w1 / h)
    return complex(out[0]) if scalar else out
