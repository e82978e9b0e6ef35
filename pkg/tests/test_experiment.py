import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abscatter.berry_phase import phase_analytic, polygon_loop
from abscatter.errors import InvalidGeometry, NotCoprime
from abscatter.experiment import (
    ContrastClass,
    ExperimentSpec,
    classify_phase,
    intensity,
    interference_pattern,
    logic_states,
    screen_positions,
    winding_phase,
)
from abscatter.flux_geometry import make_config

HALF = Fraction(1, 2)


def spec(alpha, n, k=10.0, sep=0.2, points=401, width=4.0):
    return ExperimentSpec(alpha, n, k, sep, points, width)


def best_lag(reference, shifted, max_lag):
    """Integer lag L maximizing the normalized overlap correlation of shifted[i] with reference[i + L]."""
    best, best_score = 0, -math.inf
    n = len(reference)
    for lag in range(-max_lag, max_lag + 1):
        lo, hi = max(0, -lag), min(n, n - lag)
        score = np.corrcoef(shifted[lo:hi], reference[lo + lag:hi + lag])[0, 1]
        if score > best_score:
            best, best_score = lag, score
    return best


def test_winding_phase_examples():
    assert winding_phase(0.5, 1) == pytest.approx(math.pi, abs=1e-15)
    assert winding_phase(0.37, 0) == 0.0
    assert winding_phase(Fraction(1, 3), 2) == pytest.approx(4 * math.pi / 3, abs=1e-15)


@pytest.mark.parametrize("n", range(-7, 8))
def test_half_flux_is_exact(n):
    expected = math.pi if n % 2 else 0.0
    assert winding_phase(HALF, n) == expected
    assert winding_phase(0.5, n) == expected


@given(st.floats(-5, 5), st.integers(-50, 50))
def test_winding_phase_range(alpha, n):
    phase = winding_phase(alpha, n)
    assert 0.0 <= phase < 2 * math.pi
    assert math.cos(phase) == pytest.approx(math.cos(2 * math.pi * n * alpha), abs=1e-9)


def test_logic_states_examples():
    assert logic_states(1, 2) == [0.0, math.pi]
    np.testing.assert_allclose(logic_states(1, 3), [0, 2 * math.pi / 3, 4 * math.pi / 3], atol=1e-15)
    assert len(logic_states(1, 4)) == 4


@pytest.mark.parametrize("q", [2, 3, 4, 8])
def test_logic_states_count(q):
    states = logic_states(1, q)
    assert len(states) == q == len(set(states))
    assert states == sorted(states)


@given(st.integers(-40, 40), st.integers(2, 30))
def test_logic_states_match_windings(p, q):
    if math.gcd(p, q) != 1:
        with pytest.raises(NotCoprime):
            logic_states(p, q)
        return
    states = logic_states(p, q)
    reached = {round(winding_phase(Fraction(p, q), n), 12) for n in range(q)}
    assert reached == {round(s, 12) for s in states}


def test_logic_states_errors():
    with pytest.raises(NotCoprime):
        logic_states(2, 4)
    with pytest.raises(ValueError):
        logic_states(1, 1)


def test_classify():
    assert classify_phase(0.0) is ContrastClass.IN_PHASE
    assert classify_phase(2 * math.pi - 1e-12) is ContrastClass.IN_PHASE
    assert classify_phase(math.pi + 1e-10) is ContrastClass.ANTI_PHASE
    assert classify_phase(1.0) is ContrastClass.INTERMEDIATE


def test_pattern_examples():
    anti = interference_pattern(spec(HALF, 1))
    assert anti.central_intensity == pytest.approx(0.0, abs=1e-30)
    assert anti.contrast_class is ContrastClass.ANTI_PHASE
    assert anti.modal_state == 1
    still = interference_pattern(spec(0.731, 0))
    assert still.central_intensity == 4.0
    assert still.contrast_class is ContrastClass.IN_PHASE
    assert still.modal_state is None
    assert interference_pattern(spec(HALF, 2)).contrast_class is ContrastClass.IN_PHASE


@pytest.mark.parametrize("alpha", [Fraction(1, 3), Fraction(3, 4), Fraction(5, 8), HALF])
def test_period_q_cycling(alpha):
    q = alpha.denominator
    for n in range(-3, 4):
        a, b = interference_pattern(spec(alpha, n)), interference_pattern(spec(alpha, n + q))
        assert a.phase_difference == b.phase_difference
        assert a.modal_state == b.modal_state
        np.testing.assert_array_equal(a.intensity_profile, b.intensity_profile)


def test_intensity_bounds():
    result = interference_pattern(spec(0.3, 3))
    assert np.all(result.intensity_profile >= 0) and np.all(result.intensity_profile <= 4 + 1e-12)


@pytest.mark.parametrize("alpha,n", [(Fraction(1, 3), 1), (Fraction(1, 4), 3), (0.137, 5), (HALF, 1)])
def test_fringe_shift(alpha, n):
    s = spec(alpha, n, sep=2.0, points=2001)
    dx = s.screen_width / s.screen_points
    period = 2 * math.pi / s.delta_k
    base = interference_pattern(spec(alpha, 0, sep=2.0, points=2001)).intensity_profile
    moved = interference_pattern(s)
    # I_n(x) = I_0(x + dphi/dk): sample i of the wound pattern matches sample
    # i + dphi/(dk dx) of the static one; the shift is defined mod one period
    expected = moved.phase_difference / s.delta_k / dx
    lag = best_lag(base, moved.intensity_profile, int(period / dx))
    period_samples = period / dx
    offset = (lag - expected + 0.5 * period_samples) % period_samples - 0.5 * period_samples
    assert abs(offset) <= 1.0


@pytest.mark.parametrize("alpha,n", [(Fraction(1, 3), 1), (0.42, 7), (0, 0)])
def test_energy_conservation(alpha, n):
    base = spec(alpha, n)
    fringes = 25
    width = fringes * 2 * math.pi / base.delta_k
    result = interference_pattern(ExperimentSpec(alpha, n, base.k, base.beam_separation, 4000, width))
    assert np.mean(result.intensity_profile) == pytest.approx(2.0, abs=1e-6)


@pytest.mark.parametrize("alpha", [0.5, 1 / 3, 0.2, -0.7, 1.3])
@pytest.mark.parametrize("n", [1, 2, 3, -2])
def test_consistent_with_loop_phase(alpha, n):
    config = make_config([((0.3, -0.2), alpha)])
    loop = polygon_loop((0.3, -0.2), 1.0, n=32, turns=n)
    loop_phase = -phase_analytic(config, loop).phase
    diff = math.remainder(winding_phase(alpha, n) - loop_phase, 2 * math.pi)
    assert abs(diff) < 1e-9


def test_geometry():
    s = ExperimentSpec(0.5, 1, 2.0, 2.0, 3, 1.0, screen_distance=1.0)
    assert s.delta_k == pytest.approx(2 * 2.0 * math.sin(math.pi / 4))
    np.testing.assert_allclose(screen_positions(s), [-1 / 3, 0, 1 / 3], atol=1e-15)
    assert intensity(0.0, 1.0, 0.0) == pytest.approx(4.0)


@pytest.mark.parametrize(
    "kwargs",
    [dict(k=0.0), dict(beam_separation=-1.0), dict(screen_points=1), dict(screen_width=math.nan), dict(winding=1.5)],
)
def test_invalid_geometry(kwargs):
    args = dict(alpha=0.5, winding=1, k=1.0, beam_separation=0.1, screen_points=10, screen_width=1.0)
    args.update(kwargs)
    with pytest.raises(InvalidGeometry):
        ExperimentSpec(**args)


def test_csv_and_metadata():
    result = interference_pattern(spec(Fraction(1, 3), 2, points=5))
    lines = result.to_csv().splitlines()
    assert lines[0] == "x,intensity" and len(lines) == 6
    meta = result.metadata()
    assert meta["contrast_class"] == "INTERMEDIATE" and meta["modal_state"] == 2
