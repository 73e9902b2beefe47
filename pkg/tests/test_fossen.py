import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from shipsim import ControlInput, ShipState, SimulationConfig, simulate
from shipsim.fossen import (
    AzimuthThruster,
    FossenModel,
    FossenParams,
    RudderApprox,
    azimuth_tau,
    coriolis_from_M,
    damping_force,
    fossen_derivative,
    kinetic_energy,
    rudder_linear_coefficients,
    rudder_tau_approx,
)
from shipsim.integrate import FixedStep
from shipsim.maneuvers import ConstantControl
from shipsim.mmg import MmgModel
from shipsim.mmg.hull import hull_forces_uvr
from shipsim.variant import NEUTRAL

M = np.array([[1.1e6, 0.0, 0.0], [0.0, 1.8e6, -2.0e6], [0.0, -2.0e6, 2.5e8]])
D = np.diag([2e4, 1.5e5, 3e7])
RUDDER = RudderApprox(A_R=8.0, lambda_=1.6, t_R=0.3, a_H=0.2, x_R=-30.0, x_H=-25.0, epsilon=1.05,
                      kappa=0.55, eta=0.7, w_P=0.3, D_p=3.0, k0=0.35, k1=-0.3, k2=-0.1)
vel = st.floats(-10, 10)


def test_coriolis_examples():
    assert not np.any(coriolis_from_M([0.0, 0.0, 0.0], M))
    a, b, c = 2.0, 5.0, 7.0
    u, v = 1.5, -0.4
    C = coriolis_from_M([u, v, 0.3], np.diag([a, b, c]))
    assert (C @ [u, v, 0.3])[2] == pytest.approx((b - a) * u * v, rel=1e-14)


@given(vel, vel, st.floats(-1, 1))
def test_coriolis_is_energy_neutral(u, v, r):
    nu = np.array([u, v, r])
    C = coriolis_from_M(nu, M)
    assert np.array_equal(C, -C.T)
    scale = np.linalg.norm(M, 2) * np.linalg.norm(nu) ** 3 + 1e-300
    assert abs(nu @ C @ nu) <= 1e-12 * scale


def test_derivative_at_rest():
    p = FossenParams(M, D)
    assert not np.any(fossen_derivative([0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0], p))


@given(vel, vel, st.floats(-1, 1), st.floats(-1e6, 1e6), st.floats(-1e6, 1e6), st.floats(-1e8, 1e8))
def test_derivative_back_substitution(u, v, r, X, Y, N):
    p = FossenParams(M, D, damping="cubic", cubic=(1e3, 1e4, 1e6))
    nu = np.array([u, v, r])
    tau = np.array([X, Y, N])
    nud = fossen_derivative(nu, tau, [0, 0, 0], [0, 0, 0], p)
    rhs = tau - coriolis_from_M(nu, M) @ nu - damping_force(nu, p)
    scale = np.abs(rhs).max() + np.abs(M @ nud).max() + 1.0
    assert np.abs(M @ nud - rhs).max() <= 1e-12 * scale


@given(vel, vel, st.floats(-1, 1))
def test_energy_rate_is_minus_damping_power(u, v, r):
    p = FossenParams(M, D)
    nu = np.array([u, v, r])
    nud = fossen_derivative(nu, [0, 0, 0], [0, 0, 0], [0, 0, 0], p)
    rate = nu @ M @ nud
    power = nu @ D @ nu
    assert rate == pytest.approx(-power, rel=1e-9, abs=1e-6)
    assert rate <= 0


def test_passive_decay_along_trajectory():
    model = FossenModel(FossenParams(M, D))
    traj = simulate(model, ConstantControl(NEUTRAL), SimulationConfig(300.0, FixedStep(0.1), sample_interval=1.0),
                    ShipState(u=4.0, v_m=1.0, r=0.02))
    energy = np.array([kinetic_energy(s[3:], M) for s in traj.states])
    assert np.all(np.diff(energy) <= 0) and energy[-1] < 0.5 * energy[0]


def test_parameter_validation():
    with pytest.raises(ValueError, match="symmetric"):
        FossenParams(M + np.triu(np.ones((3, 3)), 1), D)
    with pytest.raises(ValueError, match="positive definite"):
        FossenParams(-M, D)
    with pytest.raises(ValueError):
        FossenParams(M, D, damping="quadratic")


def test_azimuth_examples():
    unit = AzimuthThruster(t=0.1, T_nn=2e3, l_x=-40.0, l_y=2.0)
    tau, _ = azimuth_tau(0.0, 0.7, 1.0, unit)
    assert not np.any(tau)
    F = 0.9 * 2e3 * 9.0
    tau, _ = azimuth_tau(3.0, 0.0, 0.0, unit)
    assert tau == pytest.approx([F, 0.0, -2.0 * F], rel=1e-14)
    side = AzimuthThruster(t=0.1, T_nn=2e3, l_x=-40.0, l_y=0.0)
    tau, _ = azimuth_tau(3.0, math.pi / 2, 0.0, side)
    assert tau == pytest.approx([0.0, F, -40.0 * F], abs=1e-9 * F)


def test_azimuth_loss_split():
    unit = AzimuthThruster(t=0.1, T_nn=2e3, l_x=-40.0, l_y=2.0, d_loss=50.0)
    tau, D_loss = azimuth_tau(2.0, 0.3, 1.5, unit)
    lossless, _ = azimuth_tau(2.0, 0.3, 0.0, unit)
    assert tau == pytest.approx(lossless - D_loss @ [1.5, 0.0, 0.0], rel=1e-14)


def test_rudder_approximation_examples():
    assert not np.any(rudder_tau_approx(0.0, 5.0, 1.5, RUDDER))


@given(st.floats(-0.6, 0.6), st.floats(0, 8), st.floats(0, 3))
def test_rudder_approximation_parity(delta, u, n):
    a = rudder_tau_approx(delta, u, n, RUDDER)
    b = rudder_tau_approx(-delta, u, n, RUDDER)
    assert a[0] == pytest.approx(b[0], rel=1e-14, abs=1e-9)
    assert a[1:] == pytest.approx(-b[1:], rel=1e-14, abs=1e-9)


@pytest.mark.parametrize("delta_deg", [1.0, 5.0, 10.0, -10.0])
def test_rudder_small_angle_linearization(delta_deg):
    d = math.radians(delta_deg)
    X_dd, Y_d, N_d = rudder_linear_coefficients(5.0, 1.5, RUDDER)
    exact = rudder_tau_approx(d, 5.0, 1.5, RUDDER)
    linear = np.array([-X_dd * d * d, -Y_d * d, -N_d * d])
    assert np.all(np.abs(exact - linear) <= 0.05 * np.abs(linear))
    # the deviation is third order in the angle
    assert abs(exact[1] - linear[1]) <= Y_d * abs(d) ** 3


def test_model_turns_with_rudder():
    params = FossenParams(M, D, rudder=RUDDER, thruster=AzimuthThruster(t=0.1, T_nn=2e4, l_x=-40.0, l_y=0.0))
    traj = simulate(FossenModel(params), ConstantControl(ControlInput(-0.3, 1.5)),
                    SimulationConfig(60.0, FixedStep(0.1)), ShipState(u=4.0))
    # port rudder (negative angle) turns to port with the rudder aft of midship
    assert traj.column("r")[-1] < 0.0
    forces = FossenModel(params).forces(traj.states[-1], ControlInput(-0.3, 1.5))
    assert forces["N_total"] == pytest.approx(forces["N_ctrl"] + forces["N_damp"] + forces["N_cor"])


def test_bundled_damping_linearizes_the_hull(ship):
    g, hull = ship.mmg.geometry, ship.mmg.hull
    u0, h = 2.0, 1e-8
    expected = np.zeros((3, 3))
    for j in range(3):
        e = np.zeros(3)
        e[j] = h
        plus = hull_forces_uvr(*(np.array([u0, 0.0, 0.0]) + e), g, hull)
        minus = hull_forces_uvr(*(np.array([u0, 0.0, 0.0]) - e), g, hull)
        expected[:, j] = -(np.array(plus) - np.array(minus)) / (2 * h)
    # the Munk moment is supplied by C(nu), so it is not part of the damping
    M = ship.fossen.M
    expected[2, 1] -= (M[1, 1] - M[0, 0]) * u0
    assert ship.fossen.D_linear == pytest.approx(expected, rel=1e-5, abs=1e-3)


def test_bundled_model_matches_mmg_hull_linearization(ship):
    # same hull, so small sway/yaw perturbations at the linearization speed give the
    # same accelerations; the MMG rudder goes, since the approximation has no drift force at zero helm
    p = ship.mmg
    mmg = MmgModel(replace(p, rudder=replace(p.rudder, A_R=1e-12)))
    fossen = ship.model("fossen")
    base = np.array([0.0, 0.0, 0.0, 2.0, 0.0, 0.0])
    for dv, dr in ((1e-4, 0.0), (0.0, 1e-6)):
        y = base + [0, 0, 0, 0, dv, dr]
        a = np.array(mmg.derivative(y)[4:]) - np.array(mmg.derivative(base)[4:])
        b = np.array(fossen.derivative(y)[4:]) - np.array(fossen.derivative(base)[4:])
        assert b == pytest.approx(a, rel=1e-2)
