"""Regenerate tests/oracle_values.py from independent high-precision computations.

Nothing here imports gearmap.  ODE values come from mpmath's Taylor-series
integrator at 30 digits, lattice data from Jacobi theta functions, and
quadratures from tanh-sinh on the original integrands.

    python scripts/derive_oracles.py > tests/oracle_values.py
"""

from __future__ import annotations

import mpmath as mp

mp.mp.dps = 30


def R(t, lam, z):
    c, c2, s = mp.cos(t), mp.cos(2 * t), mp.sin(t)
    den = z**4 - 2 * c2 * z**2 + 1
    psi0 = s**2 * (z**4 - 16 * c * z**3 + (4 + 2 * c2) * z**2 - 16 * c * z + 1) / (2 * den**2)
    psi1 = -8 * c / den
    return 2 * (psi0 - lam * psi1)


def disk_jet(t, lam, d):
    """2-jet of f = y2/y1 at z = d where 2y'' + R y = 0, J_f(0) = (0, 1, 0)."""
    d = mp.mpc(d)

    def rhs(s, y):
        k = -R(t, lam, s * d) * d * d / 2
        return [y[1], k * y[0], y[3], k * y[2]]

    # y2 starts with z-derivative 1, i.e. s-derivative d
    sol = mp.odefun(rhs, 0, [mp.mpc(1), mp.mpc(0), mp.mpc(0), d])
    y1, dy1, y2, dy2 = sol(1)
    # convert s-derivatives to z-derivatives
    dy1, dy2 = dy1 / d, dy2 / d
    w = y2 / y1
    d1 = (y1 * dy2 - y2 * dy1) / y1**2
    d2 = -2 * d1 * dy1 / y1
    return w, d1, d2


def curvature_at_i(t, lam):
    _, d1, d2 = disk_jet(t, lam, 1j)
    return mp.re(1 + 1j * d2 / d1) / abs(d1)


def module_M(t):
    c = mp.cos(2 * t)
    top = mp.quad(lambda s: 1 / mp.sqrt(s**4 + 2 * c * s**2 + 1), [0, 1])
    bottom = mp.quad(lambda s: 1 / mp.sqrt(s**4 - 2 * c * s**2 + 1), [0, 1])
    return top / bottom


def elliptic_E(t, z):
    c = mp.cos(2 * t)
    z = mp.mpc(z)
    return mp.quad(lambda s: z / mp.sqrt((s * z) ** 4 - 2 * c * (s * z) ** 2 + 1), [0, 1])


def lattice(tau_over_i):
    """(omega1, e1, e2, e3) with e2 = wp(omega2) imaginary half-period, scaled to e1 - e2 = 4."""
    q = mp.exp(-mp.pi * tau_over_i)
    th2, th3, th4 = (mp.jtheta(k, 0, q) for k in (2, 3, 4))
    # theta-constant formulas for omega1 = 1; corner value is the middle root
    k = mp.pi**2 / 12
    e_real = k * (th3**4 + th4**4)
    e_corner = k * (th2**4 - th4**4)
    e_imag = -k * (th2**4 + th3**4)
    scale = mp.sqrt((e_real - e_imag) / 4)
    return scale, e_real / scale**2, e_imag / scale**2, e_corner / scale**2


def wp(z, tau_over_i):
    w1, e1, _, _ = lattice(tau_over_i)
    q = mp.exp(-mp.pi * tau_over_i)
    u = mp.pi * z / (2 * w1)
    th3, th4 = mp.jtheta(3, 0, q), mp.jtheta(4, 0, q)
    return e1 + (mp.pi * th3 * th4 * mp.jtheta(2, u, q) / (2 * w1 * mp.jtheta(1, u, q))) ** 2


def goodman_I(t1, t2):
    c1, c2 = mp.cos(t1), mp.cos(t2)
    f = lambda x: 1 / x - mp.sqrt(1 - c2 * x) / (x * mp.sqrt(1 - c1 * x) * mp.sqrt(1 - x * x))
    return mp.quad(f, [0, 0.5, 1])


def fmt(x):
    x = mp.mpmathify(x)
    if isinstance(x, mp.mpc):
        return f"complex({mp.nstr(x.real, 20)}, {mp.nstr(x.imag, 20)})"
    return mp.nstr(x, 20)


def main():
    out = ['"""Reference values from scripts/derive_oracles.py (mpmath, 30 digits). Do not edit by hand."""', ""]
    out.append("from math import pi")
    out.append("")
    out.append("# (t, lam, z) -> (f, f', f'') for J_f(0) = (0, 1, 0)")
    out.append("DISK_JETS = {")
    cases = [("pi / 4", mp.pi / 4, 0.0), ("pi / 6", mp.pi / 6, 0.05), ("pi / 3", mp.pi / 3, -0.2)]
    for label, t, lam in cases:
        for dname, d in (("1", 1), ("1j", 1j), ("-1", -1)):
            jet = disk_jet(t, lam, d)
            out.append(f"    ({label}, {lam!r}, {dname}): ({', '.join(fmt(v) for v in jet)}),")
    out.append("}")
    out.append("")
    out.append("MODULE_M = {")
    for label, t in (("0.3", mp.mpf("0.3")), ("pi / 4", mp.pi / 4), ("1.2", mp.mpf("1.2"))):
        out.append(f"    {label}: {fmt(module_M(t))},")
    out.append("}")
    out.append("")
    out.append("# (t, z) -> E(z)")
    out.append("ELLIPTIC_E = {")
    for t, z in ((0.7, 0.3 + 0.5j), (0.7, 0.9), (1.1, -0.4 + 0.2j)):
        out.append(f"    ({t!r}, {z!r}): {fmt(elliptic_E(mp.mpf(t), z))},")
    out.append("}")
    out.append("")
    out.append("# tau / i -> (omega1, e1, e2, e3)")
    out.append("LATTICE = {")
    for tau in ("0.8", "1.2", "1.5"):
        vals = lattice(mp.mpf(tau))
        assert abs(sum(vals[1:])) < 1e-25 and abs(wp(vals[0], mp.mpf(tau)) - vals[1]) < 1e-20
        out.append(f"    {tau}: ({', '.join(fmt(v) for v in vals)}),")
    out.append("}")
    out.append("")
    out.append("# (tau / i, z) -> wp(z)")
    out.append("WP = {")
    for tau, z in (("1.2", 0.3 + 0.2j), ("1.5", 0.1 - 0.7j), ("0.8", 0.45 + 0.05j)):
        out.append(f"    ({tau}, {z!r}): {fmt(wp(mp.mpc(z), mp.mpf(tau)))},")
    out.append("}")
    out.append("")
    out.append("# (t1, t2) -> singular integral I")
    out.append("GOODMAN_I = {")
    pairs = [("pi / 6", "pi / 3", mp.pi / 6, mp.pi / 3), ("0.3", "1.2", mp.mpf("0.3"), mp.mpf("1.2")),
             ("0.5", "2.5", mp.mpf("0.5"), mp.mpf("2.5")), ("1.0", "1.6", mp.mpf(1), mp.mpf("1.6"))]
    for a, b, t1, t2 in pairs:
        out.append(f"    ({a}, {b}): {fmt(goodman_I(t1, t2))},")
    out.append("}")
    out.append("")
    out.append("# t -> largest zero of the tooth-edge curvature kappa(lam) at z = i")
    out.append("KAPPA_ZERO = {")
    for label, t, guess in (("pi / 6", mp.pi / 6, 0.1214), ("pi / 4", mp.pi / 4, 0.1062), ("0.6024", mp.mpf("0.6024"), 0.115)):
        root = mp.findroot(lambda lam: curvature_at_i(t, lam), (guess - 0.002, guess + 0.002), solver="secant", tol=1e-24)
        out.append(f"    {label}: {fmt(root)},")
    out.append("}")
    print("\n".join(out))


if __name__ == "__main__":
    main()
