import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from shipsim.kinematics import (
    ShipGeometry,
    ShipState,
    TrueWind,
    apparent_wind,
    body_to_earth_rates,
    drift_angle,
    nondim_force,
    nondim_moment,
    redim_force,
    redim_moment,
    resultant_speed,
    wrap_angle,
)

speeds = st.floats(-20, 20, allow_nan=False)
angles = st.floats(-10, 10, allow_nan=False)
GEOM = ShipGeometry(L_pp=50.0, L_OA=53.0, d=5.0, A_T=80.0, A_L=250.0)


def test_resultant_speed_examples():
    assert resultant_speed(3, 4) == 5
    assert resultant_speed(0, 0) == 0
    assert resultant_speed(-1, 0) == 1


def test_drift_angle_examples():
    assert drift_angle(1, 0) == 0
    assert drift_angle(0, -1) == pytest.approx(math.pi / 2)
    assert drift_angle(1e-12, 1e-13, eps=1e-9) == 0


def test_nondim_examples():
    assert nondim_force(1000.0, GEOM, 2.0) == pytest.approx(1000.0 / 512500.0, rel=1e-15)
    assert nondim_force(1000.0, GEOM, 2.0) == pytest.approx(1.9512e-3, rel=1e-4)
    assert nondim_force(0.0, GEOM, 2.0) == 0
    assert redim_force(nondim_force(7.3, GEOM, 2.0), GEOM, 2.0) == pytest.approx(7.3, rel=1e-15)
    assert nondim_moment(1000.0 * 50.0, GEOM, 2.0) == pytest.approx(nondim_force(1000.0, GEOM, 2.0))
    with pytest.raises(ValueError, match="zero reference speed"):
        nondim_force(1.0, GEOM, 0.0)


def test_body_to_earth_examples():
    assert body_to_earth_rates(ShipState(u=1.0, r=0.1)) == (1.0, 0.0, 0.1)
    dx, dy, dpsi = body_to_earth_rates(ShipState(psi=math.pi / 2, u=1.0, r=0.2))
    assert dx == pytest.approx(0.0, abs=1e-15) and dy == pytest.approx(1.0) and dpsi == 0.2
    assert body_to_earth_rates(ShipState(psi=1.0, r=-0.3)) == (0.0, 0.0, -0.3)


def test_apparent_wind_examples():
    calm = apparent_wind(ShipState(u=5.0), TrueWind(0.0, 0.0))
    assert calm.U_A == 5.0 and calm.gamma_A == 0.0
    at_rest = apparent_wind(ShipState(psi=0.7), TrueWind(10.0, 2.0))
    assert at_rest.U_A == pytest.approx(10.0)
    head = apparent_wind(ShipState(u=3.0), TrueWind(4.0, 0.0))
    assert head.U_A == pytest.approx(7.0) and head.gamma_A == pytest.approx(0.0)


def test_beam_wind_from_starboard_is_quarter_turn():
    aw = apparent_wind(ShipState(), TrueWind(8.0, math.pi / 2))
    assert aw.gamma_A == pytest.approx(math.pi / 2)


def test_state_validation_and_wrapping():
    assert ShipState(psi=3 * math.pi).psi == pytest.approx(math.pi)
    assert ShipState(psi=-math.pi).psi == pytest.approx(math.pi)
    with pytest.raises(ValueError):
        ShipState(u=float("nan"))
    with pytest.raises(ValueError):
        ShipGeometry(L_pp=50.0, L_OA=40.0, d=3.0, A_T=1.0, A_L=1.0)
    with pytest.raises(ValueError):
        ShipGeometry(L_pp=50.0, L_OA=60.0, d=0.0, A_T=1.0, A_L=1.0)
    with pytest.raises(ValueError):
        TrueWind(-1.0, 0.0)


@given(angles)
def test_wrap_angle_range(a):
    w = wrap_angle(a)
    assert -math.pi < w <= math.pi
    assert math.isclose(math.cos(w), math.cos(a), abs_tol=1e-9)
    assert math.isclose(math.sin(w), math.sin(a), abs_tol=1e-9)


@given(speeds, speeds)
def test_resultant_speed_sign_symmetry(u, v):
    s = resultant_speed(u, v)
    assert s >= 0
    assert resultant_speed(-u, v) == s == resultant_speed(u, -v)


@given(speeds, speeds)
def test_drift_angle_odd_in_sway(u, v):
    if resultant_speed(u, v) >= 1e-9:
        assert drift_angle(u, -v) == -drift_angle(u, v)


@given(st.floats(-1e7, 1e7, allow_nan=False), st.floats(0.01, 30))
def test_nondim_round_trip(F, U):
    assert math.isclose(redim_force(nondim_force(F, GEOM, U), GEOM, U), F, rel_tol=1e-12, abs_tol=1e-300)
    assert math.isclose(redim_moment(nondim_moment(F, GEOM, U), GEOM, U), F, rel_tol=1e-12, abs_tol=1e-300)


@given(angles, speeds, speeds, st.floats(-1, 1))
def test_body_to_earth_preserves_speed(psi, u, v, r):
    dx, dy, _ = body_to_earth_rates(ShipState(psi=psi, u=u, v_m=v, r=r))
    assert math.isclose(math.hypot(dx, dy), math.hypot(u, v), rel_tol=1e-12, abs_tol=1e-12)


@given(angles, st.floats(0.1, 30), st.floats(0, 2 * math.pi, exclude_max=True))
def test_apparent_wind_at_rest_is_relative_true_wind(psi, U_T, gamma_T):
    aw = apparent_wind(ShipState(psi=psi), TrueWind(U_T, gamma_T))
    assert math.isclose(aw.U_A, U_T, rel_tol=1e-12)
    rel = (gamma_T - psi) % (2 * math.pi)
    diff = (aw.gamma_A - rel + math.pi) % (2 * math.pi) - math.pi
    assert abs(diff) < 1e-9


@given(angles, speeds, speeds, st.floats(0, 30), st.floats(0, 2 * math.pi, exclude_max=True))
def test_apparent_wind_is_vector_difference(psi, u, v, U_T, gamma_T):
    aw = apparent_wind(ShipState(psi=psi, u=u, v_m=v), TrueWind(U_T, gamma_T))
    # earth frame: wind blowing from gamma_T moves towards gamma_T + pi
    wind_vel = -U_T * np.array([math.cos(gamma_T), math.sin(gamma_T)])
    ship_vel = np.array(body_to_earth_rates(ShipState(psi=psi, u=u, v_m=v))[:2])
    rel = wind_vel - ship_vel
    felt_from = math.atan2(-rel[1], -rel[0]) - psi
    assert math.isclose(aw.U_A, float(np.hypot(*rel)), rel_tol=1e-9, abs_tol=1e-9)
    if aw.U_A > 1e-6:
        diff = (aw.gamma_A - felt_from + math.pi) % (2 * math.pi) - math.pi
        assert abs(diff) < 1e-6
