import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from abscatter import berry_phase
from abscatter.berry_phase import (
    PathPolyline,
    PhaseResult,
    cut_discontinuity,
    phase_analytic,
    phase_line_integral,
    plane_wave_state,
    polygon_loop,
    unwrap_angle,
    winding_number,
)
from abscatter.errors import (
    DuplicateFlux,
    IndexOutOfRange,
    InvalidPath,
    PathNotClosed,
    PathThroughFlux,
    ToleranceNotReached,
    TooCloseToFlux,
)
from abscatter.flux_geometry import make_config

from oracles import dense_unwrap, line_integral_trapezoid

TWO_PI = 2 * math.pi


def test_unwrap_full_turn():
    theta = unwrap_angle(polygon_loop((0, 0), 1.0, n=8), (0, 0))
    assert theta[-1] - theta[0] == pytest.approx(TWO_PI, abs=1e-14)
    assert np.all(np.abs(np.diff(theta)) < math.pi)


def test_unwrap_straight_segment():
    theta = unwrap_angle(PathPolyline([[1, -1], [1, 1]]), (0, 0))
    assert theta[0] == pytest.approx(-math.pi / 4)
    assert theta[-1] - theta[0] == pytest.approx(math.pi / 2, abs=1e-15)


def test_unwrap_far_center_matches_dense_oracle():
    theta = unwrap_angle(PathPolyline([[1, -1], [1, 1]]), (10, 0))
    # frozen from oracles.dense_unwrap((1,-1), (1,1), (10,0))
    assert theta[-1] - theta[0] == pytest.approx(-0.22131444234779085, abs=1e-12)
    assert theta[-1] - theta[0] == pytest.approx(dense_unwrap((1, -1), (1, 1), (10, 0)), abs=1e-12)


def test_unwrap_through_center():
    with pytest.raises(PathThroughFlux):
        unwrap_angle(PathPolyline([[-1, 0], [1, 0]]), (0, 0))


def test_winding_numbers():
    assert winding_number(polygon_loop((0, 0), 1.0), (0, 0)) == 1
    square = PathPolyline([[2, 2], [3, 2], [3, 3], [2, 3], [2, 2]], closed=True)
    assert winding_number(square, (0, 0)) == 0
    assert winding_number(polygon_loop((0, 0), 1.0, turns=2), (0, 0)) == 2
    assert winding_number(polygon_loop((0, 0), 1.0, turns=-3), (0.1, 0.2)) == -3


def test_winding_needs_closed_path():
    with pytest.raises(PathNotClosed):
        winding_number(PathPolyline([[1, 0], [0, 1]]), (0, 0))


@pytest.mark.parametrize("points,closed", [
    ([[0, 0]], False),
    ([[0, 0], [0, 0], [1, 1]], False),
    ([[0, 0], [1, 0], [1, 1]], True),
    ([[0, 0], [math.nan, 1]], False),
])
def test_invalid_paths(points, closed):
    with pytest.raises(InvalidPath):
        PathPolyline(points, closed=closed)


def test_path_json_round_trip():
    data = {"points": [[0.0, 1.0], [2.0, 3.0], [0.0, 1.0]], "closed": True}
    assert PathPolyline.from_dict(data).to_dict() == data


def test_phase_result_json_round_trip():
    res = PhaseResult(-1.5, (6.28, 0.1), (1, 0))
    assert PhaseResult.from_dict(res.to_dict()) == res


# --- phase examples ---------------------------------------------------------

def test_single_flux_loop_both_routes():
    cfg = make_config([((0, 0), 0.3)])
    loop = polygon_loop((0, 0), 1.0, n=16)
    assert phase_analytic(cfg, loop).phase == pytest.approx(-0.6 * math.pi, abs=1e-14)
    assert phase_line_integral(cfg, loop, 1e-8).phase == pytest.approx(-0.6 * math.pi, abs=1e-8)
    assert phase_analytic(cfg, loop).phase == pytest.approx(-1.884956, abs=1e-6)


def test_zero_flux_gives_zero_phase():
    cfg = make_config([((0.3, 0.2), 0.0)])
    loop = polygon_loop((0, 0), 1.0)
    assert phase_analytic(cfg, loop).phase == 0.0
    assert phase_line_integral(cfg, loop).phase == pytest.approx(0.0, abs=1e-12)


def test_radial_motion_acquires_no_phase():
    cfg = make_config([((0, 0), 0.7)], ideal_angle=0.0)
    ray = PathPolyline([[50.0, 0.0], [10.0, 0.0], [0.5, 0.0]])
    assert phase_analytic(cfg, ray).phase == 0.0
    assert phase_line_integral(cfg, ray).phase == 0.0


def test_two_flux_loop_enclosing_first_only():
    cfg = make_config([((0, 0), 0.2), ((3, 0), 0.5)])
    square = [[0.5, 0.5], [-0.5, 0.5], [-0.5, -0.5], [0.5, -0.5], [0.5, 0.5]]
    path = PathPolyline(square, closed=True)
    oracle = line_integral_trapezoid([0.2, 0.5], [(0, 0), (3, 0)], square)
    assert oracle == pytest.approx(-0.4 * math.pi, abs=1e-8)
    res = phase_analytic(cfg, path)
    assert res.phase == pytest.approx(-0.4 * math.pi, abs=1e-12)
    assert res.windings == (1, 0)
    assert phase_line_integral(cfg, path).phase == pytest.approx(-0.4 * math.pi, abs=1e-8)


def test_closed_path_enclosing_nothing():
    cfg = make_config([((0, 0), 0.9)])
    path = PathPolyline([[5, 5], [6, 5], [6, 6], [5, 5]], closed=True)
    assert phase_analytic(cfg, path).phase == pytest.approx(0.0, abs=1e-15)


def test_open_path_has_no_windings():
    res = phase_analytic(make_config([((0, 0), 0.9)]), PathPolyline([[1, 0], [0, 1]]))
    assert res.windings == ()
    assert res.phase == pytest.approx(-0.9 * math.pi / 2)


def test_path_through_flux_rejected():
    cfg = make_config([((0, 0), 0.5)])
    path = PathPolyline([[-1, 5e-7], [1, 5e-7]])
    with pytest.raises(PathThroughFlux):
        phase_analytic(cfg, path)
    with pytest.raises(PathThroughFlux):
        phase_line_integral(cfg, path)


def test_tolerance_not_reached(monkeypatch):
    monkeypatch.setattr(berry_phase, "MAX_SEGMENTS", 64)
    cfg = make_config([((0, 0), 0.5)])
    path = PathPolyline([[-1, 2e-6], [1, 2e-6]])
    with pytest.raises(ToleranceNotReached):
        phase_line_integral(cfg, path, tol=1e-10)


def test_close_pass_is_resolved():
    cfg = make_config([((0, 0), 1.3), ((0.4, 3.0), -0.6)])
    path = PathPolyline([[-2.0, 1e-4], [3.0, 1e-4], [3.0, 2.0]])
    a = phase_analytic(cfg, path).phase
    b = phase_line_integral(cfg, path, 1e-8).phase
    assert abs(a - b) < 1e-6


# --- properties -------------------------------------------------------------

point = st.tuples(st.floats(-3, 3), st.floats(-3, 3))


def _config(draw_fluxes):
    try:
        return make_config([((x, y), a) for (x, y), a in draw_fluxes])
    except DuplicateFlux:
        assume(False)


flux_list = st.lists(st.tuples(point, st.floats(-2, 2)), min_size=1, max_size=4, unique_by=lambda f: f[0])


def _clear(path, cfg, margin=1e-3):
    try:
        for pos in cfg.positions:
            unwrap_angle(path, pos)
        a, b = path.segments
        from abscatter.berry_phase import _segment_distance

        return all(np.min(_segment_distance(a, b, pos)) > margin for pos in cfg.positions)
    except PathThroughFlux:
        return False


@settings(max_examples=40, deadline=None)
@given(flux_list, st.lists(point, min_size=2, max_size=6, unique=True), st.booleans())
def test_analytic_matches_quadrature(fluxes, pts, closed):
    cfg = _config(fluxes)
    if closed:
        pts = pts + [pts[0]]
    assume(len(pts) >= 2)
    try:
        path = PathPolyline(pts, closed=closed and len(pts) > 2)
    except InvalidPath:
        assume(False)
    assume(_clear(path, cfg))
    assert abs(phase_analytic(cfg, path).phase - phase_line_integral(cfg, path, 1e-8).phase) < 1e-6


@settings(max_examples=60, deadline=None)
@given(flux_list, st.lists(point, min_size=3, max_size=8, unique=True))
def test_closed_path_quantization(fluxes, pts):
    cfg = _config(fluxes)
    try:
        path = PathPolyline(pts + [pts[0]], closed=True)
    except InvalidPath:
        assume(False)
    assume(_clear(path, cfg, 1e-6))
    res = phase_analytic(cfg, path)
    expected = -TWO_PI * sum(w * a for w, a in zip(res.windings, cfg.alphas))
    assert res.phase == pytest.approx(expected, abs=1e-9)
    np.testing.assert_allclose(res.per_flux_angle_change, TWO_PI * np.array(res.windings), atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(flux_list, st.lists(point, min_size=2, max_size=4, unique=True), st.lists(point, min_size=1, max_size=4, unique=True))
def test_concatenation_additive(fluxes, first, second):
    cfg = _config(fluxes)
    assume(second[0] != first[-1])
    try:
        p1 = PathPolyline(first)
        p2 = PathPolyline([first[-1]] + second)
        joined = p1 + p2
    except InvalidPath:
        assume(False)
    assume(_clear(joined, cfg, 1e-6))
    total = phase_analytic(cfg, joined).phase
    assert total == pytest.approx(phase_analytic(cfg, p1).phase + phase_analytic(cfg, p2).phase, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(-2, 2), st.integers(-2, 2).filter(bool), st.floats(0.2, 2.0), st.floats(-0.1, 0.1), st.floats(-0.1, 0.1))
def test_deformation_invariance(alpha, turns, radius, cx, cy):
    cfg = make_config([((0, 0), alpha)])
    polygon = polygon_loop((cx, cy), radius, n=7, turns=turns, start=0.3)
    circle = polygon_loop((0, 0), 1.5, n=200, turns=turns)
    assert phase_analytic(cfg, polygon).phase == pytest.approx(phase_analytic(cfg, circle).phase, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(flux_list, st.floats(0.1, 20), st.floats(-math.pi, math.pi), point)
def test_plane_wave_unit_modulus(fluxes, k, inc, p):
    cfg = _config(fluxes)
    assume(min(math.dist(p, f[0]) for f in fluxes) > 1e-6)
    assert abs(abs(plane_wave_state(cfg, k, inc, p)) - 1.0) < 1e-12


# --- plane-wave state and cuts ---------------------------------------------

def test_plane_wave_without_flux():
    cfg = make_config([((0, 0), 0.0)])
    assert plane_wave_state(cfg, 2.0, 0.0, (1.5, 3.0)) == pytest.approx(np.exp(3j), abs=1e-15)


def test_plane_wave_on_ideal_ray():
    cfg = make_config([((0, 0), 0.5)], ideal_angle=0.0)
    assert plane_wave_state(cfg, 1.0, math.pi / 2, (2.0, 0.0)) == pytest.approx(1.0)


def test_plane_wave_too_close():
    with pytest.raises(TooCloseToFlux):
        plane_wave_state(make_config([((0, 0), 0.5)]), 1.0, 0.0, (0.0, 0.0))


@pytest.mark.parametrize("alpha,expected", [
    (0.5, -1.0),
    (1.0, 1.0),
    (0.25, -1j),
    (0.75, 1j),
])
def test_cut_discontinuity(alpha, expected):
    cfg = make_config([((0, 0), alpha), ((2, 3), 0.4)], ideal_angle=0.6)
    assert abs(cut_discontinuity(cfg, 0, 1.5) - expected) < 1e-6


def test_cut_discontinuity_index():
    with pytest.raises(IndexOutOfRange):
        cut_discontinuity(make_config([((0, 0), 0.5)]), 3, 1.0)
