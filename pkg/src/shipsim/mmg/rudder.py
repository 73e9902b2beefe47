"""Rudder inflow and forces, valid in all four propeller quadrants."""

from __future__ import annotations

import math

from ..kinematics import ShipGeometry, ShipState
from .params import PropellerParams, RudderParams
from .propeller import N_EPS, one_minus_wake, thrust_loading


def fujii_lift_gradient(lambda_: float) -> float:
    if lambda_ < 0:
        raise ValueError("aspect ratio must be non-negative")
    return 6.13 * lambda_ / (2.25 + lambda_)


def _sgn_sq(x: float) -> float:
    return x * abs(x)


def momentum_inflow(u_p: float, loading: float, epsilon: float, k_x: float, eta: float) -> float:
    """Longitudinal rudder inflow behind a propeller turning ahead.

    ``loading`` is ``K_T (n_p D_p)^2``; a negative radicand (propeller
    braking) is clamped to zero.
    """
    jet = math.sqrt(max(0.0, u_p * u_p + 8.0 * loading / math.pi))
    inner = u_p + k_x / epsilon * (jet - u_p)
    return epsilon * math.sqrt(eta * inner * inner + (1.0 - eta) * u_p * u_p)


def rudder_inflow_uvr(
    u: float,
    v_m: float,
    r: float,
    n_p: float,
    delta: float,
    geom: ShipGeometry,
    prop: PropellerParams,
    rudder: RudderParams,
) -> tuple[float, float, float, float]:
    """Return ``(u_R, v_R, U_R, alpha_R)``."""
    gamma = rudder.gamma_P if v_m + rudder.x_R * r >= 0 else rudder.gamma_N
    v_R = -gamma * (v_m + rudder.l_R * r)
    eta = prop.D_p / rudder.H_R
    if n_p >= 0 or abs(n_p) < N_EPS:
        u_p = one_minus_wake(u, v_m, r, prop, geom.L_pp) * u
        u_R = momentum_inflow(u_p, thrust_loading(u_p, n_p, prop), rudder.epsilon, rudder.k_x, eta)
    elif u >= 0:
        wake = one_minus_wake(u, v_m, r, prop, geom.L_pp)
        nD = n_p * prop.D_p
        K_T = prop.thrust_coefficient(wake * u / nD)
        u_pr2 = u * rudder.epsilon * wake
        u_pr1 = u_pr2 + nD * rudder.k_xPR * math.sqrt(8.0 * abs(K_T) / math.pi)
        u_sq = eta * _sgn_sq(u_pr1) + (1.0 - eta) * _sgn_sq(u_pr2) + rudder.C_PR * u
        u_R = math.copysign(math.sqrt(abs(u_sq)), u_sq)
    else:
        u_R = u
    U_R = math.hypot(u_R, v_R)
    alpha_R = delta - math.atan2(v_R, u_R)
    return u_R, v_R, U_R, alpha_R


def rudder_inflow(state: ShipState, n_p: float, delta: float, geom: ShipGeometry, prop: PropellerParams, rudder: RudderParams):
    return rudder_inflow_uvr(state.u, state.v_m, state.r, n_p, delta, geom, prop, rudder)


def rudder_forces_uvr(
    u: float,
    v_m: float,
    r: float,
    n_p: float,
    delta: float,
    geom: ShipGeometry,
    prop: PropellerParams,
    rudder: RudderParams,
) -> tuple[float, float, float]:
    _, _, U_R, alpha_R = rudder_inflow_uvr(u, v_m, r, n_p, delta, geom, prop, rudder)
    F_N = 0.5 * geom.rho * rudder.A_R * U_R * U_R * fujii_lift_gradient(rudder.lambda_) * math.sin(alpha_R)
    cos_d = math.cos(delta)
    return (
        -(1.0 - rudder.t_R) * F_N * math.sin(delta),
        -(1.0 + rudder.a_H) * F_N * cos_d,
        -(rudder.x_R + rudder.a_H * rudder.x_H) * F_N * cos_d,
    )


def rudder_forces(state: ShipState, n_p: float, delta: float, geom: ShipGeometry, prop: PropellerParams, rudder: RudderParams):
    return rudder_forces_uvr(state.u, state.v_m, state.r, n_p, delta, geom, prop, rudder)
