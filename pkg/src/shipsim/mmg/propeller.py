"""Four-quadrant propeller model.

Quadrants follow the sign of surge speed and revolutions:

======  =========  ==========
         u >= 0     u < 0
======  =========  ==========
n > 0    FIRST      SECOND
n < 0    THIRD      FOURTH
======  =========  ==========

``n = 0`` is grouped with the ahead-running quadrants for dispatch; its
forces are zero because every term carries the revolution count.
"""

from __future__ import annotations

import enum
import math

from ..kinematics import ZERO_SPEED_EPS, ShipGeometry, ShipState
from .params import PropellerParams

N_EPS = 1e-6


class Quadrant(enum.Enum):
    FIRST = 1
    SECOND = 2
    THIRD = 3
    FOURTH = 4


def propeller_quadrant(u: float, n_p: float) -> Quadrant:
    if n_p >= 0:
        return Quadrant.FIRST if u >= 0 else Quadrant.SECOND
    return Quadrant.THIRD if u >= 0 else Quadrant.FOURTH


def one_minus_wake(u: float, v_m: float, r: float, prop: PropellerParams, L_pp: float) -> float:
    if u < 0:
        return 1.0
    U = math.hypot(u, v_m)
    if U < ZERO_SPEED_EPS:
        return 1.0 - prop.w_p0
    # r L / U grows without bound while pivoting; the floor keeps the
    # propeller inflow from reversing against the ship's own motion
    beta_p = v_m / U + prop.x_p * r * L_pp / U
    return max(0.0, 1.0 - prop.w_p0 + prop.tau * abs(beta_p) + prop.C_p * beta_p * beta_p)


def wake_fraction(state: ShipState, prop: PropellerParams, L_pp: float) -> float:
    """Effective wake fraction at the propeller; zero when going astern."""
    return 1.0 - one_minus_wake(state.u, state.v_m, state.r, prop, L_pp)


def thrust_loading(u_p: float, n_p: float, prop: PropellerParams) -> float:
    """``K_T(J_p) (n_p D_p)^2`` written without dividing by ``n_p``."""
    if abs(n_p) < N_EPS:
        return 0.0
    nD = n_p * prop.D_p
    return prop.k0 * nD * nD + prop.k1 * u_p * nD + prop.k2 * u_p * u_p


def _reversal_branch(J_s: float, c1: float, c2: float, c3: float, c4: float, c5: float) -> float:
    if J_s < -0.35:
        return c3 + c4 * J_s
    if J_s <= -0.06:
        return c1 + c2 * J_s
    return c5


def propeller_forces_uvr(
    u: float, v_m: float, r: float, n_p: float, geom: ShipGeometry, prop: PropellerParams
) -> tuple[float, float, float]:
    if abs(n_p) < N_EPS:
        return 0.0, 0.0, 0.0
    rho = geom.rho
    L = geom.L_pp
    D = prop.D_p
    nD = n_p * D
    J_s = u / nD
    if n_p > 0:
        u_p = one_minus_wake(u, v_m, r, prop, L) * u
        X_p = rho * D * D * (1.0 - prop.t_p0) * thrust_loading(u_p, n_p, prop)
        if u >= 0:
            return X_p, 0.0, 0.0
        A, B = prop.A, prop.B
        nP2 = (n_p * prop.P) ** 2
        q = 0.5 * rho * L * geom.d * nP2
        Y_p = q * (A[5] * J_s * J_s + A[6] * J_s + A[7])
        N_p = q * L * (B[5] * J_s * J_s + B[6] * J_s + B[7])
        return X_p, Y_p, N_p
    # reversed propeller; thrust deduction is zero
    K = prop.C6 + prop.C7 * J_s if J_s >= prop.C10 else prop.C3
    X_p = rho * n_p * n_p * D**4 * K
    A, B = prop.A, prop.B
    q = 0.5 * rho * L * geom.d * nD * nD
    Y_p = q * _reversal_branch(J_s, *A[:5])
    N_p = q * L * _reversal_branch(J_s, *B[:5])
    return X_p, Y_p, N_p


def propeller_forces(state: ShipState, n_p: float, geom: ShipGeometry, prop: PropellerParams) -> tuple[float, float, float]:
    return propeller_forces_uvr(state.u, state.v_m, state.r, n_p, geom, prop)
