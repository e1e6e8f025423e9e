import cmath
import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gear_map
from gearmap.errors import NotAPregear, NotCentered
from gearmap.geartools import (
    EDGES,
    GearParams,
    MultiToothMap,
    analyze_pregear,
    circle_axis_points,
    concentric_centers,
    curvature_at,
    edge_intervals,
    gear_center,
    gear_normalize,
    multitooth,
    reposition_center,
    symmetric_map,
    trace_boundary,
)
from gearmap.odecore import DiskMap, Jet2, MobiusMap
from gearmap.schwarzian import MapParams
from gearmap.solver import forward, lambda_bounds

import oracle_values as oracle


def tooth_line_error(w, gamma):
    """Largest distance of samples from the ray ``arg w = gamma`` (through the origin)."""
    return float(np.max(np.abs((w * cmath.exp(-1j * gamma)).imag)))


def radius_spread(w):
    r = np.abs(w)
    return float((r.max() - r.min()) / r.mean())


class _Moved:
    """``M o h`` for a Mobius ``M``: a pregear built from a known gear map."""

    def __init__(self, h, M):
        self.h, self.M = h, M

    def jets(self, zs):
        w, d1, d2 = self.h.jets(zs)
        M = self.M
        return M(w), M.deriv(w) * d1, M.second_deriv(w) * d1 * d1 + M.deriv(w) * d2


def test_curvature_of_simple_maps():
    assert curvature_at(Jet2(1, 1, 0), 1) == pytest.approx(1)
    assert curvature_at(Jet2(2, 2, 0), 1) == pytest.approx(0.5)
    assert curvature_at(Jet2(1, 2, 2), 1) == pytest.approx(1)


def test_circle_axis_points_direct_formula():
    c, rho = 1 + 0.5j, 1.2
    u = cmath.exp(0.3j)
    d, bm, bp = circle_axis_points(c + rho * u, -u, 1 / rho)
    assert d == pytest.approx(math.sqrt(1.19), abs=1e-14)
    assert (bm, bp) == pytest.approx((1 - math.sqrt(1.19), 1 + math.sqrt(1.19)), abs=1e-14)


def test_disjoint_tooth_circles_are_not_a_pregear():
    c, rho = 1 + 2j, 1.2
    with pytest.raises(NotAPregear):
        circle_axis_points(c + rho, -1, 1 / rho)


@pytest.mark.parametrize("shift", [0.05, -0.03])
def test_synthetic_pregear_round_trip(shift):
    g = gear_map(math.pi / 4, 0.0).standardized()
    M = MobiusMap(1, 0, -shift, 1)
    tr = trace_boundary(_Moved(g, M), g.params.t, param=g.param_of)
    geo = analyze_pregear(tr)
    T, gear = gear_normalize(geo)
    assert gear.beta == pytest.approx(g.gear.beta, rel=1e-8)
    assert gear.gamma == pytest.approx(g.gear.gamma, abs=1e-8)
    assert abs(T(geo.b_interior)) < 1e-12


def test_normalizer_preserves_real_axis_orientation(quarter_map):
    geo, T = quarter_map.geometry, quarter_map.T
    xs = np.linspace(geo.p_minus1, geo.p_1, 25)
    assert np.max(np.abs(T(xs).imag)) < 1e-14
    assert np.all(T.deriv(xs).real > 0)
    assert abs(T(geo.b_interior)) < 1e-12
    assert geo.interior in ("minus", "plus")


def test_ten_tooth_parameters(ten_tooth_map):
    gear = ten_tooth_map.gear
    assert gear.beta == pytest.approx(1.3**10, rel=1e-2)
    assert gear.gamma == pytest.approx(math.pi / 2, rel=1e-2)


def test_gear_map_is_centered(quarter_map):
    assert abs(quarter_map(0.0)) < 1e-12
    assert quarter_map.jet0.d1.real > 0 and abs(quarter_map.jet0.d1.imag) < 1e-14


def test_ten_tooth_edges_straight_and_arcs_concentric(ten_tooth_map):
    tr = ten_tooth_map.trace(64)
    gamma = ten_tooth_map.gear.gamma
    assert tooth_line_error(tr.edges["tooth-upper"], gamma) < 1e-6
    assert tooth_line_error(tr.edges["tooth-lower"], -gamma) < 1e-6
    assert radius_spread(tr.edges["inner-arc"]) < 1e-8
    assert radius_spread(tr.edges["outer-arc"]) < 1e-8


def test_trace_symmetry_and_labels(quarter_map):
    tr = quarter_map.trace(32)
    assert tr.symmetry_error() < 1e-8
    up, lo = tr.edges["tooth-upper"], tr.edges["tooth-lower"]
    assert abs(np.angle(up).mean() + np.angle(lo).mean()) < 1e-8
    assert tr.curveset().labels() == sorted(EDGES)


def test_beta_is_ratio_of_concentric_radii(quarter_map):
    geo, T = quarter_map.geometry, quarter_map.T
    assert quarter_map.gear.beta == pytest.approx(abs(T(geo.p_1)) / abs(T(geo.p_minus1)), rel=1e-14)
    assert quarter_map.gear.beta > 1


@pytest.mark.parametrize("t", [math.pi / 6, math.pi / 4])
def test_concentric_criterion_agrees_with_straightness(t):
    straight = symmetric_map(MapParams(t, oracle.KAPPA_ZERO[t]))
    cm, c1 = concentric_centers(trace_boundary(straight, t))
    assert abs(cm - c1) < 1e-7
    bent = symmetric_map(MapParams(t, oracle.KAPPA_ZERO[t] - 0.05))
    cm, c1 = concentric_centers(trace_boundary(bent, t))
    assert abs(cm - c1) > 1e-3


def test_straight_pregear_is_its_own_gear():
    t = math.pi / 4
    f = symmetric_map(MapParams(t, oracle.KAPPA_ZERO[t]))
    tr = trace_boundary(f, t, 32)
    geo = analyze_pregear(tr)
    assert geo.interior == "gear"
    T, gear = gear_normalize(geo)
    w = T(tr.edges["tooth-upper"])
    assert tooth_line_error(w, gear.gamma) < 1e-6
    assert gear_center(geo) == pytest.approx(-T.b)


def test_reposition_without_shift():
    t = 0.5
    f = symmetric_map(MapParams(t, 0.0))
    t1, t2, F = reposition_center(t, math.pi - t, 0.0, f, 0.0)
    assert (t1, t2) == pytest.approx((t, math.pi - t), abs=1e-15)
    zs = np.array([0.2, 0.5j])
    assert np.allclose(F(zs), f(zs), atol=1e-12)


def test_reposition_moves_center_and_keeps_image():
    t, lam = 0.5, 0.0
    f = symmetric_map(MapParams(t, lam))
    w0 = float(f(0.3).real)
    t1, t2, F = reposition_center(t, math.pi - t, lam, f, w0)
    assert abs(F(0.0) - w0) < 1e-9
    Tm = MobiusMap.disk_automorphism(-0.3)
    assert abs(Tm(cmath.exp(1j * t1)) - cmath.exp(1j * t)) < 1e-10
    assert abs(Tm(cmath.exp(1j * t2)) - cmath.exp(1j * (math.pi - t))) < 1e-10
    # F(D) = f(D): each boundary sample of F is the f-image of the matching boundary point
    th = np.linspace(0.05, 2 * np.pi - 0.05, 40) + 0.011
    zs = np.exp(1j * th)
    assert np.max(np.abs(F(zs) - f(Tm(zs)))) < 1e-6


def test_multitooth_single_tooth_is_identity(quarter_map):
    m = MultiToothMap(quarter_map, 1)
    zs = np.array([0.3, 0.2 + 0.5j, -0.6j])
    assert np.allclose(m(zs), quarter_map(zs), atol=1e-14)


def test_multitooth_ten_teeth(ten_tooth_map):
    n = 10
    m, cs = multitooth(ten_tooth_map, n)
    gear = ten_tooth_map.gear
    outer = cs.by_label("outer-arc-00").as_complex()
    inner = cs.by_label("inner-arc-00").as_complex()
    assert np.abs(outer).mean() / np.abs(inner).mean() == pytest.approx(1.3, abs=1e-3)
    up = cs.by_label("tooth-upper-00").as_complex()
    lo = cs.by_label("tooth-lower-00").as_complex()
    assert np.angle(up).mean() - np.angle(lo).mean() == pytest.approx(2 * gear.gamma / n, abs=1e-3)
    nxt = cs.by_label("tooth-lower-01").as_complex()
    gap = np.angle(nxt).mean() - np.angle(up).mean()
    assert gap == pytest.approx(2 * (math.pi - gear.gamma) / n, abs=1e-3)
    assert len(cs.curves) == 4 * n


def test_multitooth_rotation_invariance(ten_tooth_map):
    n = 10
    m = MultiToothMap(ten_tooth_map, n)
    zs = 0.9 * np.exp(1j * np.linspace(0.1, 0.5, 7))
    rot = cmath.exp(2j * math.pi / n)
    assert np.max(np.abs(m(zs * rot) - rot * m(zs))) < 1e-8


def test_multitooth_requires_centered_map(quarter_map):
    off = dataclasses.replace(quarter_map, disk=DiskMap(quarter_map.disk.schwarzian, Jet2(0.5, 1, 0)))
    with pytest.raises(NotCentered):
        MultiToothMap(off, 3)


def test_edge_intervals_cover_circle():
    iv = edge_intervals(0.4)
    assert iv["tooth-lower"][1] - iv["outer-arc"][0] == pytest.approx(2 * math.pi)


def test_gear_params_validation():
    with pytest.raises(ValueError):
        GearParams(0.9, 1.0)
    with pytest.raises(ValueError):
        GearParams(2.0, 3.5)


@settings(max_examples=8)
@given(st.floats(0.25, 1.3), st.floats(0.15, 0.85))
def test_renormalized_maps_are_gears(t, u):
    lo, hi = lambda_bounds(t)
    lam = lo + u * (hi - lo)
    try:
        g = gear_map(t, lam).standardized()
    except NotAPregear:
        return
    tr = g.trace(24)
    assert tooth_line_error(tr.edges["tooth-upper"], g.gear.gamma) < 1e-6 * g.gear.beta
    assert radius_spread(tr.edges["inner-arc"]) < 1e-8
    assert radius_spread(tr.edges["outer-arc"]) < 1e-8
    assert forward(MapParams(t, lam)).beta == pytest.approx(g.gear.beta, rel=1e-12)
