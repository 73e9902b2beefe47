"""Wind loads from Fourier-series coefficients in the apparent wind angle."""

from __future__ import annotations

import math

from ..kinematics import ApparentWind, ShipGeometry
from .params import WindCoeffs


def wind_coefficients(gamma_A: float, wind: WindCoeffs) -> tuple[float, float, float]:
    """``(C_X, C_Y, C_N)`` at apparent angle ``gamma_A`` (0 = from ahead)."""
    th = 2.0 * math.pi - gamma_A
    C_X = wind.X0 + wind.X1 * math.cos(th) + wind.X3 * math.cos(3 * th) + wind.X5 * math.cos(5 * th)
    C_Y = wind.Y1 * math.sin(th) + wind.Y3 * math.sin(3 * th) + wind.Y5 * math.sin(5 * th)
    C_N = wind.N1 * math.sin(th) + wind.N2 * math.sin(2 * th) + wind.N3 * math.sin(3 * th)
    return C_X, C_Y, C_N


def wind_forces_ua(U_A: float, gamma_A: float, geom: ShipGeometry, wind: WindCoeffs) -> tuple[float, float, float]:
    if U_A == 0.0:
        return 0.0, 0.0, 0.0
    C_X, C_Y, C_N = wind_coefficients(gamma_A, wind)
    q = 0.5 * geom.rho_A * U_A * U_A
    return q * geom.A_T * C_X, q * geom.A_L * C_Y, q * geom.A_L * geom.L_OA * C_N


def wind_forces(apparent: ApparentWind, geom: ShipGeometry, wind: WindCoeffs) -> tuple[float, float, float]:
    return wind_forces_ua(apparent.U_A, apparent.gamma_A, geom, wind)
