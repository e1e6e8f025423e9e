import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gearmap.errors import LeftRegion, MaxIterations
from gearmap.geartools import GearParams
from gearmap.schwarzian import MapParams
from gearmap.solver import (
    GUARD,
    RegionG,
    forward,
    invert,
    lambda_bounds,
    level_curve_intercept,
    level_curves,
    limit_lambda,
)

from conftest import TEN_TOOTH

T_GRID = np.linspace(0.05, 0.5, 8)


@pytest.fixture(scope="module")
def gamma_curves():
    return level_curves("gamma", [0.3 * math.pi, 0.5 * math.pi, 0.7 * math.pi], T_GRID)


def test_bounds_examples():
    assert lambda_bounds(math.pi / 3) == pytest.approx((-0.40625, 0.09375), abs=1e-15)
    lo, hi = lambda_bounds(1e-9)
    assert lo == pytest.approx(-3 / 8, abs=1e-12) and hi == pytest.approx(1 / 8, abs=1e-12)
    with pytest.raises(ValueError):
        lambda_bounds(math.pi / 2)


@given(st.floats(1e-6, math.pi / 2 - 1e-6))
def test_region_has_constant_width(t):
    lo, hi = lambda_bounds(t)
    assert hi - lo == pytest.approx(0.5, abs=1e-13)


def test_region_contains_and_clamp():
    R = RegionG()
    assert R.contains(0.5, 0.0) and not R.contains(0.5, 0.2) and not R.contains(-0.1, 0.0)
    t, lam, moved = R.clamp(2.0, 5.0)
    assert moved and t == math.pi / 2 - GUARD and lam == pytest.approx(R.upper(t) - GUARD)
    assert R.clamp(0.5, 0.0) == (0.5, 0.0, False)


def test_limit_lambda_values():
    assert limit_lambda(math.pi / 2) == 0.0
    assert limit_lambda(1e-12) == pytest.approx(1 / 8, abs=1e-12)
    assert limit_lambda(math.pi - 1e-12) == pytest.approx(-3 / 8, abs=1e-11)
    for k in range(1, 10):
        g = k * math.pi / 10
        assert limit_lambda(g) == (1.0 - (2.0 * g / math.pi) ** 2) / 8.0


def test_forward_ten_tooth_case():
    g = forward(MapParams(*TEN_TOOTH))
    assert g.beta == pytest.approx(1.3**10, rel=1e-2)
    assert g.gamma == pytest.approx(math.pi / 2, abs=1e-3)


def test_forward_is_continuous():
    a = forward(MapParams(math.pi / 4, 0.0))
    b = forward(MapParams(math.pi / 4, 1e-6))
    assert abs(a.beta - b.beta) < 1e-4 and abs(a.gamma - b.gamma) < 1e-5


def test_invert_ten_tooth_case():
    record = []
    p = invert(GearParams(1.3**10, math.pi / 2), record=record)
    assert p.t == pytest.approx(0.6024, abs=2e-3)
    assert p.lam == pytest.approx(-0.0029, abs=5e-4)
    assert record and all(RegionG().contains(t, lam) for t, lam in record)


@pytest.mark.parametrize("t,lam", [(0.4, -0.1), (0.9, 0.0), (1.2, -0.2)])
def test_round_trip(t, lam):
    p = invert(forward(MapParams(t, lam)))
    assert p.t == pytest.approx(t, abs=1e-6) and p.lam == pytest.approx(lam, abs=1e-6)


def test_invert_from_poor_guess_stays_in_region():
    record = []
    target = forward(MapParams(0.3, 0.05))
    p = invert(target, guess=(1.5, -0.5), record=record)
    assert p.t == pytest.approx(0.3, abs=1e-6)
    assert all(RegionG().contains(t, lam) for t, lam in record)


def test_invert_reports_unreachable_target():
    with pytest.raises((LeftRegion, MaxIterations)):
        invert(GearParams(1.0 + 1e-12, 1e-6), max_iter=3)


def test_level_curve_kind_checked():
    with pytest.raises(ValueError):
        level_curves("delta", [1.0], [0.5])


def test_gamma_curves_meet_axis_at_limit(gamma_curves):
    assert len(gamma_curves) == 3
    for c in gamma_curves:
        assert level_curve_intercept(c) == pytest.approx(limit_lambda(c.value), abs=0.02)


def test_level_curve_points_inside_region(gamma_curves):
    for c in gamma_curves:
        assert all(RegionG().contains(t, lam) for t, lam in c.points)


def test_gamma_curve_points_have_the_level(gamma_curves):
    c = gamma_curves[1]
    for t, lam in c.points[::3]:
        assert forward(MapParams(t, lam)).gamma == pytest.approx(c.value, abs=1e-8)


def test_beta_grows_along_gamma_curve_as_t_decreases(gamma_curves):
    for c in gamma_curves:
        betas = [forward(MapParams(t, lam)).beta for t, lam in c.points]
        assert np.all(np.diff(betas) < 0)


def test_beta_curves_accumulate_at_extreme_points():
    curves = level_curves("beta", [1.0], [0.01], n_scan=60)
    assert curves
    for c in curves:
        lam = c.points[0][1]
        assert min(abs(lam + 3 / 8), abs(lam - 1 / 8)) < 0.03
