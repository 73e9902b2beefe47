"""Side thrusters for berthing.

Each unit pushes sideways with ``rho n^2 D^4 K_T sign(n)``, faded linearly
with forward speed until it vanishes at ``|u| = 1/c_u``. Positive ``n``
pushes to starboard. This force law is a modelling extension, not a fitted
hydrodynamic result.
"""

from __future__ import annotations

from ..kinematics import ShipState
from .params import Thruster, ThrusterParams


def single_thruster_force(u: float, n: float, unit: Thruster, rho: float) -> float:
    fade = 1.0 - unit.c_u * abs(u)
    if fade <= 0.0 or n == 0.0:
        return 0.0
    return rho * n * abs(n) * unit.D**4 * unit.K_T * fade


def thruster_forces_u(u: float, n_bt: float, n_st: float, thrusters: ThrusterParams, rho: float = 1025.0):
    Y = N = 0.0
    for unit, n in ((thrusters.bow, n_bt), (thrusters.stern, n_st)):
        if unit is None:
            continue
        F = single_thruster_force(u, n, unit, rho)
        Y += F
        N += F * unit.x
    return 0.0, Y, N


def thruster_forces(state: ShipState, n_bt: float, n_st: float, thrusters: ThrusterParams, rho: float = 1025.0):
    return thruster_forces_u(state.u, n_bt, n_st, thrusters, rho)
