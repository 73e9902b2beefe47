"""Hull forces with cross-flow drag for open-water and harbour manoeuvres."""

from __future__ import annotations

import math

from ..kinematics import ShipGeometry, ShipState
from .params import HullCoeffs


def crossflow_integrals(v_m: float, r: float, C_r: float, L_pp: float) -> tuple[float, float]:
    """Integrals of ``|w| w`` and ``|w| w x`` with ``w = v_m + C_r r x`` over the hull length.

    The integrand is a signed quadratic, so each piece between sign changes
    integrates exactly; the antiderivatives ``|s| s^2 / 3`` and ``|s| s^3 / 4``
    cover the case where the local velocity changes sign along the hull.
    """
    a = v_m
    b = C_r * r
    h = 0.5 * L_pp
    if b == 0.0:
        return L_pp * abs(a) * a, 0.0
    s1 = a - b * h
    s2 = a + b * h
    if s1 * s2 >= 0.0:
        sign = 1.0 if (s1 + s2) > 0 else -1.0
        I_Y = sign * (a * a * L_pp + b * b * L_pp**3 / 12.0)
        I_N = sign * a * b * L_pp**3 / 6.0
        return I_Y, I_N
    q2 = abs(s2) * s2 * s2
    q1 = abs(s1) * s1 * s1
    I_Y = (q2 - q1) / (3.0 * b)
    I_N = ((q2 * s2 - q1 * s1) / 4.0 - a * (q2 - q1) / 3.0) / (b * b)
    return I_Y, I_N


def resistance_angle(u: float, v_m: float) -> float:
    """``|atan2(v_m, u)|``: 0 for pure ahead motion, pi for pure astern."""
    return abs(math.atan2(v_m, u))


def hull_forces_uvr(u: float, v_m: float, r: float, geom: ShipGeometry, hull: HullCoeffs) -> tuple[float, float, float]:
    L = geom.L_pp
    q = 0.5 * geom.rho * L * geom.d
    U = math.hypot(u, v_m)
    beta = abs(math.atan2(v_m, u))
    X0 = hull.X_0F + (hull.X_0A - hull.X_0F) * beta / math.pi
    X_H = q * (X0 * u * U + hull.X_vr * L * v_m * r)
    I_Y, _ = crossflow_integrals(v_m, r, hull.C_rY, L)
    _, I_N = crossflow_integrals(v_m, r, hull.C_rN, L)
    Y_H = q * (hull.Y_v * v_m * abs(u) + hull.Y_r * L * r * u - hull.C_D / L * I_Y)
    N_H = q * L * (hull.N_v * v_m * u + hull.N_r * L * r * abs(u) - hull.C_D / (L * L) * I_N)
    return X_H, Y_H, N_H


def hull_forces(state: ShipState, geom: ShipGeometry, hull: HullCoeffs) -> tuple[float, float, float]:
    return hull_forces_uvr(state.u, state.v_m, state.r, geom, hull)
