import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from shipsim import ControlInput, ShipState, SimulationConfig, simulate
from shipsim.integrate import FixedStep
from shipsim.maneuvers import ConstantControl
from shipsim.response import (
    DegenerateDerivativeSet,
    KTModel,
    LinearDerivativeSet,
    Nomoto2nd,
    NomotoKT,
    NorrbinModel,
    NorrbinVariant,
    OscillatoryPair,
    derive_nomoto_from_linear,
    kt_rdot,
    kt_step_response,
    nomoto2nd_state_derivative,
    nondim_kt,
    norrbin_rdot,
    redim_kt,
)


def derivative_set(U=2.0, **changes) -> LinearDerivativeSet:
    base = dict(
        m_=0.18, m_x_=0.02, m_y_=0.16, I_zz_=0.011, J_zz_=0.009,
        C_Ybeta=0.36, C_Yr=0.08, C_Ydelta=-0.06, C_Nbeta=0.10, C_Nr=0.06, C_Ndelta=0.03,
        U=U, L=50.0,
    )
    base.update(changes)
    return LinearDerivativeSet(**base)


def test_kt_rdot_examples():
    m = NomotoKT(0.1, 10.0)
    assert kt_rdot(m.K * 0.2, 0.2, m) == 0
    assert kt_rdot(0.0, 0.2, m) == pytest.approx(0.002)
    assert kt_rdot(0.0, 0.0, m) == 0


def test_kt_step_response_examples():
    m = NomotoKT(0.08, 12.0)
    assert kt_step_response(m, 0.1, 0.0) == 0
    assert kt_step_response(m, 0.1, 1e4) == pytest.approx(0.008, rel=1e-15)
    assert kt_step_response(m, 0.1, m.T) == pytest.approx(0.6321 * 0.008, rel=1e-4)
    with pytest.raises(ValueError):
        kt_step_response(m, 0.1, -1.0)


def test_norrbin_examples():
    assert norrbin_rdot(0.3, 0.1, NorrbinModel(0.2, 5.0, 0.0)) == kt_rdot(0.3, 0.1, NomotoKT(0.2, 5.0))
    m = NorrbinModel(1.0, 1.0, 1.0)
    lo, hi = 0.0, 0.1
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if mid + mid**3 < 0.1 else (lo, mid)
    assert lo == pytest.approx(0.09902, abs=1e-5)
    assert norrbin_rdot(lo, 0.1, m) == pytest.approx(0.0, abs=1e-12)
    assert norrbin_rdot(0.0, 0.0, m) == 0


def test_nomoto2nd_examples():
    m = Nomoto2nd(K=0.5, T1=10.0, T2=2.0, T3=3.0)
    assert nomoto2nd_state_derivative(m.K * 0.1, 0.0, 0.1, 0.0, m) == 0
    flat = Nomoto2nd(K=0.5, T1=10.0, T2=2.0, T3=0.0)
    assert nomoto2nd_state_derivative(0.01, 0.002, 0.1, 5.0, flat) == nomoto2nd_state_derivative(0.01, 0.002, 0.1, -3.0, flat)
    assert nomoto2nd_state_derivative(0.0, 0.0, 1.0, 0.0, Nomoto2nd(1.0, 1.0, 1.0, 0.0)) == 1


def test_model_validation():
    with pytest.raises(ValueError):
        NomotoKT(0.1, 0.0)
    with pytest.raises(ValueError):
        NorrbinModel(0.1, 1.0, -1.0)
    with pytest.raises(ValueError):
        Nomoto2nd(1.0, -1.0, 1.0, 0.0)


def test_nondim_kt_examples():
    K_, T_ = nondim_kt(NomotoKT(0.04, 25.0), 2.0, 50.0)
    assert K_ == pytest.approx(1.0) and T_ == pytest.approx(1.0)
    back = redim_kt(K_, T_, 2.0, 50.0)
    assert back.K == pytest.approx(0.04, rel=1e-15) and back.T == pytest.approx(25.0, rel=1e-15)
    with pytest.raises(ValueError):
        nondim_kt(NomotoKT(0.04, 25.0), 0.0, 50.0)
    with pytest.raises(ValueError):
        nondim_kt(NomotoKT(0.04, 25.0), 2.0, 0.0)


def test_derive_nomoto_collapsed_gain():
    # no sway/yaw cross terms: the gain reduces to the yaw-only ratio
    d = derivative_set(C_Nbeta=0.0, C_Ydelta=0.0)
    nomoto = derive_nomoto_from_linear(d)
    assert nomoto.K == pytest.approx((d.U / d.L) * d.C_Ndelta / d.C_Nr, rel=1e-14)


def test_derive_nomoto_speed_scaling():
    slow = derive_nomoto_from_linear(derivative_set(U=2.0))
    fast = derive_nomoto_from_linear(derivative_set(U=4.0))
    assert fast.K == pytest.approx(2 * slow.K, rel=1e-14)
    assert fast.T1 + fast.T2 == pytest.approx(0.5 * (slow.T1 + slow.T2), rel=1e-14)
    assert fast.T3 == pytest.approx(0.5 * slow.T3, rel=1e-14)


def _steady_gain(d: LinearDerivativeSet) -> float:
    E, A, b = d.system_matrices()
    x = np.linalg.solve(A, -b)
    return float(x[1])


def test_derive_nomoto_matches_linear_steady_gain():
    d = derivative_set()
    assert derive_nomoto_from_linear(d).K == pytest.approx(_steady_gain(d), rel=1e-9)


def test_derive_nomoto_poles_match_linear_system():
    d = derivative_set()
    nomoto = derive_nomoto_from_linear(d)
    E, A, _ = d.system_matrices()
    poles = np.sort(np.linalg.eigvals(np.linalg.solve(E, A)).real)
    assert poles == pytest.approx(np.sort([-1 / nomoto.T2, -1 / nomoto.T1]), rel=1e-9)
    assert nomoto.T1 >= nomoto.T2 > 0


def test_derive_nomoto_errors():
    with pytest.raises(DegenerateDerivativeSet, match="degenerate derivative set"):
        derivative_set(C_Nbeta=0.0, C_Nr=0.0)
    with pytest.raises(OscillatoryPair) as info:
        derive_nomoto_from_linear(derivative_set(C_Nbeta=-0.5))
    assert info.value.T_product > 0


@given(
    st.floats(0.2, 1.0), st.floats(0.02, 0.3), st.floats(-0.2, 0.2), st.floats(0.01, 0.2),
    st.floats(-0.1, -0.01), st.floats(0.01, 0.1), st.floats(0.5, 10.0),
)
def test_derive_nomoto_steady_gain_property(C_Yb, C_Yr, C_Nb, C_Nr, C_Yd, C_Nd, U):
    try:
        d = derivative_set(U=U, C_Ybeta=C_Yb, C_Yr=C_Yr, C_Nbeta=C_Nb, C_Nr=C_Nr, C_Ydelta=C_Yd, C_Ndelta=C_Nd)
        nomoto = derive_nomoto_from_linear(d)
    except (DegenerateDerivativeSet, OscillatoryPair, ValueError):
        return
    assert math.isclose(nomoto.K, _steady_gain(d), rel_tol=1e-9)


def _run(variant, delta, t_end, dt=0.05):
    config = SimulationConfig(t_end=t_end, mode=FixedStep(dt), control_period=dt)
    return simulate(variant, ConstantControl(ControlInput(delta, 0.0)), config, ShipState(u=1.0))


def test_kt_integration_matches_step_response():
    m = NomotoKT(0.3, 4.0)
    traj = _run(KTModel(m), 0.2, 10 * m.T)
    exact = np.array([kt_step_response(m, 0.2, t) for t in traj.t])
    assert np.max(np.abs(traj.column("r") - exact)) < 1e-8 * m.K * 0.2


@given(st.floats(0.0, 0.6), st.floats(0.0, 50.0))
def test_models_are_odd_in_rudder(delta, c3):
    for variant in (KTModel(NomotoKT(0.1, 8.0)), NorrbinVariant(NorrbinModel(0.1, 8.0, c3))):
        a = _run(variant, delta, 20.0, dt=0.5)
        b = _run(variant, -delta, 20.0, dt=0.5)
        assert np.array_equal(a.column("r"), -b.column("r"))


@given(st.floats(-0.6, 0.6), st.floats(0.0, 1000.0), st.floats(0.01, 0.5))
def test_norrbin_steady_state_is_unique_real_root(delta, c3, K):
    m = NorrbinModel(K, 5.0, c3)
    target = K * delta
    lo, hi = -abs(target) - 1, abs(target) + 1
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if mid + c3 * mid**3 < target else (lo, mid)
    assert abs(norrbin_rdot(lo, delta, m)) < 1e-10
