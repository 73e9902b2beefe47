"""Frames, state containers and shared geometry for 3-DoF surface ships.

Conventions used throughout the package:

* Earth frame ``O0-x0y0``: ``x0`` points north, ``y0`` east.
* Body frame ``O-xy``: origin at midship, ``x`` forward, ``y`` to starboard.
* Heading ``psi`` is measured clockwise from ``x0``; positive yaw rate ``r``
  turns the bow to starboard.
* Wind angles give the direction the wind blows *from*. The true wind
  direction ``gamma_T`` is measured clockwise from north; the apparent wind
  angle ``gamma_A`` is measured clockwise from the bow, so ``gamma_A = 0`` is
  a head wind and ``gamma_A = pi/2`` is wind from starboard.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

ZERO_SPEED_EPS = 1e-9
TWO_PI = 2.0 * math.pi


def wrap_angle(angle: float) -> float:
    """Map an angle to (-pi, pi]."""
    a = math.fmod(angle, TWO_PI)
    if a <= -math.pi:
        a += TWO_PI
    elif a > math.pi:
        a -= TWO_PI
    return a


def wrap_2pi(angle: float) -> float:
    """Map an angle to [0, 2*pi)."""
    a = angle % TWO_PI
    return 0.0 if a >= TWO_PI else a


def _check_finite(obj) -> None:
    for f in fields(obj):
        value = getattr(obj, f.name)
        if isinstance(value, float) and not math.isfinite(value):
            raise ValueError(f"{type(obj).__name__}.{f.name} must be finite, got {value}")


@dataclass(frozen=True)
class ShipState:
    """Pose in the earth frame plus body-frame velocities.

    ``v_m`` is the sway velocity at midship. ``psi`` is normalized to
    (-pi, pi] on construction.
    """

    x0: float = 0.0
    y0: float = 0.0
    psi: float = 0.0
    u: float = 0.0
    v_m: float = 0.0
    r: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, float(getattr(self, f.name)))
        _check_finite(self)
        object.__setattr__(self, "psi", wrap_angle(self.psi))

    def to_array(self) -> np.ndarray:
        return np.array([self.x0, self.y0, self.psi, self.u, self.v_m, self.r])

    @classmethod
    def from_array(cls, values) -> "ShipState":
        return cls(*(float(v) for v in values[:6]))


@dataclass(frozen=True)
class ShipGeometry:
    L_pp: float
    L_OA: float
    d: float
    A_T: float
    A_L: float
    rho: float = 1025.0
    rho_A: float = 1.225

    def __post_init__(self):
        _check_finite(self)
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"ShipGeometry.{f.name} must be positive")
        if self.L_OA < self.L_pp:
            raise ValueError("ShipGeometry.L_OA must be >= L_pp")


@dataclass(frozen=True)
class TrueWind:
    U_T: float = 0.0
    gamma_T: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.U_T) and self.U_T >= 0):
            raise ValueError("TrueWind.U_T must be finite and non-negative")
        object.__setattr__(self, "gamma_T", wrap_2pi(self.gamma_T))


@dataclass(frozen=True)
class ApparentWind:
    U_A: float = 0.0
    gamma_A: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.U_A) and self.U_A >= 0):
            raise ValueError("ApparentWind.U_A must be finite and non-negative")
        object.__setattr__(self, "gamma_A", wrap_2pi(self.gamma_A))


CALM = TrueWind()


def resultant_speed(u: float, v: float) -> float:
    return math.hypot(u, v)


def drift_angle(u: float, v: float, eps: float = ZERO_SPEED_EPS) -> float:
    """Drift angle ``-asin(v/U)``; defined as 0 when ``U < eps``."""
    U = math.hypot(u, v)
    if U < eps:
        return 0.0
    return -math.asin(max(-1.0, min(1.0, v / U)))


def _reference(geom: ShipGeometry, U: float) -> float:
    if U == 0:
        raise ValueError("zero reference speed")
    return 0.5 * geom.rho * U * U * geom.L_pp * geom.d


def nondim_force(F: float, geom: ShipGeometry, U: float) -> float:
    return F / _reference(geom, U)


def nondim_moment(M: float, geom: ShipGeometry, U: float) -> float:
    return M / (_reference(geom, U) * geom.L_pp)


def redim_force(F_nd: float, geom: ShipGeometry, U: float) -> float:
    return F_nd * _reference(geom, U)


def redim_moment(M_nd: float, geom: ShipGeometry, U: float) -> float:
    return M_nd * _reference(geom, U) * geom.L_pp


def body_to_earth_rates(state: ShipState) -> tuple[float, float, float]:
    c, s = math.cos(state.psi), math.sin(state.psi)
    return (
        state.u * c - state.v_m * s,
        state.u * s + state.v_m * c,
        state.r,
    )


def apparent_wind_components(psi: float, u: float, v: float, U_T: float, gamma_T: float) -> tuple[float, float]:
    """Scalar core of :func:`apparent_wind`, returns ``(U_A, gamma_A)``."""
    rel = gamma_T - psi
    # body-frame vector pointing towards where the apparent wind comes from
    ax = U_T * math.cos(rel) + u
    ay = U_T * math.sin(rel) + v
    U_A = math.hypot(ax, ay)
    if U_A == 0.0:
        return 0.0, 0.0
    return U_A, wrap_2pi(math.atan2(ay, ax))


def apparent_wind(state: ShipState, wind: TrueWind) -> ApparentWind:
    """Wind felt on board: true wind minus ship velocity, in the body frame."""
    U_A, gamma_A = apparent_wind_components(state.psi, state.u, state.v_m, wind.U_T, wind.gamma_T)
    return ApparentWind(U_A, gamma_A)
