import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gearmap.errors import PoleAtPoint, PrevertexSingularity
from gearmap.geartools import renormalized_gear_map
from gearmap.odecore import MobiusMap
from gearmap.schwarzian import (
    AsymPrevertices,
    MapParams,
    disk_schwarzian,
    eval_R,
    eval_R_degenerate,
    prevertices,
    psi0,
    psi1,
    pullback,
    triangle_schwarzian,
)
from gearmap.solver import limit_lambda

angles = st.floats(0.05, math.pi / 2 - 0.05)
lams = st.floats(-0.5, 0.2)
interior = st.complex_numbers(max_magnitude=0.9, allow_nan=False, allow_infinity=False)


def test_values_at_origin():
    for t in (0.2, math.pi / 3, 1.3):
        assert psi0(t, 0.0) == pytest.approx(math.sin(t) ** 2 / 2, rel=1e-15)
        assert psi1(t, 0.0) == pytest.approx(-8 * math.cos(t), rel=1e-15)
    assert psi0(math.pi / 3, 0.0) == pytest.approx(3 / 8, rel=1e-15)
    assert psi1(math.pi / 3, 0.0) == pytest.approx(-4, rel=1e-15)


@given(angles, lams)
def test_R_at_origin(t, lam):
    assert eval_R(MapParams(t, lam), 0.0) == pytest.approx(math.sin(t) ** 2 + 16 * lam * math.cos(t), abs=1e-13)


def test_prevertex_is_singular():
    t = 0.7
    with pytest.raises(PrevertexSingularity):
        psi0(t, cmath.exp(1j * t) * (1 + 1e-14))
    for z in prevertices(t):
        with pytest.raises(PrevertexSingularity):
            eval_R(MapParams(t, 0.1), z)


def test_conjugation_symmetry_sample():
    p = MapParams(0.7, 0.03)
    z = 0.3 + 0.4j
    assert abs(eval_R(p, np.conj(z)) - np.conj(eval_R(p, z))) < 1e-14


@given(angles, lams, interior)
def test_reflection_through_origin_swaps_configuration(t, lam, z):
    # z -> -z exchanges the inner and outer prevertex pairs, i.e. t -> pi - t, lam -> -lam
    assert disk_schwarzian(t, lam)(-z) == pytest.approx(disk_schwarzian(math.pi - t, -lam)(z), rel=1e-10, abs=1e-10)


def test_not_even_in_general():
    R = disk_schwarzian(0.7, 0.03)
    assert abs(R(0.3 + 0.4j) - R(-0.3 - 0.4j)) > 1e-3


@given(angles, lams, interior)
def test_inversion_symmetry_with_quartic_weight(t, lam, z):
    if abs(z) < 0.2:
        return
    R = disk_schwarzian(t, lam)
    assert R(1 / z) * z**-4 == pytest.approx(R(z), rel=1e-10, abs=1e-10)


@given(angles, lams, st.floats(-0.95, 0.95))
def test_real_on_real_axis(t, lam, x):
    assert abs(eval_R(MapParams(t, lam), x).imag) == 0.0


def test_pullback_by_identity():
    R = disk_schwarzian(0.5, 0.1)
    P = pullback(R, MobiusMap.identity())
    zs = np.array([0.1, 0.2 + 0.3j, -0.5j])
    assert np.allclose(P(zs), R(zs), rtol=1e-15)


def test_pullback_poles_are_preimages():
    t, q = 0.5, 0.3
    T = MobiusMap.disk_automorphism(q)
    P = pullback(disk_schwarzian(t, 0.1), T)
    for w in prevertices(t):
        with pytest.raises(PrevertexSingularity):
            P(T.inverse()(w))
    with pytest.raises(PoleAtPoint):
        pullback(disk_schwarzian(t, 0.1), MobiusMap(1, 0, 1, -0.5))(0.5)


def test_pullback_matches_composed_map():
    t, lam = math.pi / 4, 0.0
    g = renormalized_gear_map(MapParams(t, lam))
    zs = np.array([0.3, 0.5j, -0.4 + 0.2j, 0.7 * cmath.exp(2.0j)])
    # h = T o f o T_q evaluated directly against the pulled-back solution
    from gearmap.geartools import symmetric_map

    f = symmetric_map(MapParams(t, lam))
    direct = g.T(f(g.Tq(zs)))
    assert np.max(np.abs(g(zs) - direct)) < 1e-6
    assert abs(g(0.0)) < 1e-12 and g.jet0.d1.real > 0


def test_degenerate_value_at_minus_one():
    # Q(-1) = 3, so the value is 5 sin^2(pi/3) / (2 * 9) = 5/24
    assert eval_R_degenerate(math.pi / 3, 0.0, -1.0) == pytest.approx(5 / 24, rel=1e-14)


def test_degenerate_matches_triangle_for_right_angle_tooth():
    zs = 0.6 * np.exp(1j * np.linspace(0.1, 6.0, 10))
    diff = eval_R_degenerate(math.pi / 3, 0.0, zs) - triangle_schwarzian(math.pi / 3, math.pi / 2, zs)
    assert np.max(np.abs(diff)) < 1e-12


@given(st.floats(0.2, 2.9), st.floats(0.05, math.pi - 0.05))
def test_degenerate_equals_triangle_at_limit_lambda(t2, gamma):
    zs = np.array([0.3 + 0.2j, -0.5j, 0.1, -0.7 + 0.1j])
    a = eval_R_degenerate(t2, limit_lambda(gamma), zs)
    b = triangle_schwarzian(t2, gamma, zs)
    assert np.max(np.abs(a - b)) < 1e-10 * max(1.0, np.max(np.abs(b)))


def test_degenerate_double_pole_at_one():
    t2, lam = 1.0, 0.07
    vals = [(h**2) * eval_R_degenerate(t2, lam, 1 + h) for h in (1e-3, 1e-4, 1e-5)]
    assert abs(vals[-1] - 4 * lam) < 1e-4
    assert abs(vals[-1] - vals[-2]) < abs(vals[-2] - vals[-3]) + 1e-12
    with pytest.raises(PrevertexSingularity):
        eval_R_degenerate(t2, lam, 1.0)


def test_asym_prevertices_ordering():
    AsymPrevertices(0.0, 1.0, 0.1)
    with pytest.raises(ValueError):
        AsymPrevertices(1.0, 0.5, 0.1)


def test_map_params_range():
    with pytest.raises(ValueError):
        MapParams(1.7, 0.0)
