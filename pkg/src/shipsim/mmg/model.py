"""Assembled low-speed MMG model.

Two evaluation paths share the same physics:

* :func:`mmg_forces` / :func:`mmg_derivative` call the per-component modules
  and return a readable breakdown, used for logging and as a test oracle;
* :func:`compile_derivative` and :meth:`MmgModel.fixed_step` run the
  compiled kernel in :mod:`shipsim.mmg.kernel`, which the integrator calls
  in its hot loop.
"""

from __future__ import annotations

import numpy as np

from ..kinematics import CALM, TrueWind, apparent_wind_components
from ..variant import ControlInput, ModelVariant, NEUTRAL, kinematic_rates
from .hull import hull_forces_uvr
from .kernel import mmg_rates, mmg_rk4, pack_constants
from .params import MmgMassParams, MmgParameters
from .propeller import propeller_forces_uvr
from .rudder import rudder_forces_uvr
from .thrusters import thruster_forces_u
from .wind import wind_forces_ua

COMPONENTS = ("H", "p", "R", "T", "wind")


def solve_accelerations(X: float, Y: float, N: float, u: float, v_m: float, r: float, mass: MmgMassParams):
    """Solve the coupled rigid-body equations for ``(du/dt, dv_m/dt, dr/dt)``."""
    m, mx, my = mass.m, mass.m_x, mass.m_y
    c = mass.coupling
    Iz = mass.yaw_inertia
    rhs_x = X + (m + my) * v_m * r + mass.x_G * m * r * r + my * mass.alpha_y * r * r
    rhs_y = Y - (m + mx) * u * r
    rhs_n = N - c * u * r
    det = mass.determinant
    ud = rhs_x / (m + mx)
    vd = (Iz * rhs_y - c * rhs_n) / det
    rd = ((m + my) * rhs_n - c * rhs_y) / det
    return ud, vd, rd


def equation_residual(accel, forces, u: float, v_m: float, r: float, mass: MmgMassParams):
    """Left minus right side of the rigid-body equations for given accelerations."""
    ud, vd, rd = accel
    X, Y, N = forces
    m, mx, my = mass.m, mass.m_x, mass.m_y
    c = mass.coupling
    return (
        (m + mx) * ud - (m + my) * v_m * r - mass.x_G * m * r * r - my * mass.alpha_y * r * r - X,
        (m + my) * vd + (m + mx) * u * r + c * rd - Y,
        mass.yaw_inertia * rd + c * (vd + u * r) - N,
    )


def mmg_forces(y, control: ControlInput, wind: TrueWind, params: MmgParameters) -> dict:
    """Per-component forces plus totals and the apparent wind."""
    _, _, psi, u, v_m, r = y
    g = params.geometry
    U_A, gamma_A = apparent_wind_components(psi, u, v_m, wind.U_T, wind.gamma_T)
    parts = {
        "H": hull_forces_uvr(u, v_m, r, g, params.hull),
        "p": propeller_forces_uvr(u, v_m, r, control.n_p, g, params.propeller),
        "R": rudder_forces_uvr(u, v_m, r, control.n_p, control.delta, g, params.propeller, params.rudder),
        "T": thruster_forces_u(u, control.n_bt, control.n_st, params.thrusters, g.rho),
        "wind": wind_forces_ua(U_A, gamma_A, g, params.wind),
    }
    out = {"U_A": U_A, "gamma_A": gamma_A}
    for axis, i in (("X", 0), ("Y", 1), ("N", 2)):
        total = 0.0
        for key, vec in parts.items():
            out[f"{axis}_{key}"] = vec[i]
            total += vec[i]
        out[f"{axis}_total"] = total
    return out


def mmg_derivative(y, control: ControlInput, wind: TrueWind, params: MmgParameters) -> tuple:
    _, _, psi, u, v_m, r = y
    f = mmg_forces(y, control, wind, params)
    ud, vd, rd = solve_accelerations(f["X_total"], f["Y_total"], f["N_total"], u, v_m, r, params.mass)
    dx, dy = kinematic_rates(psi, u, v_m)
    return (dx, dy, r, ud, vd, rd)


def compile_derivative(params: MmgParameters):
    """Return ``f(y, delta, n_p, n_bt=0, n_st=0, U_T=0, gamma_T=0) -> 6-tuple``.

    Backed by the compiled kernel; agrees with :func:`mmg_derivative` to
    round-off.
    """
    p = pack_constants(params)

    def derivative(y, delta, n_p, n_bt=0.0, n_st=0.0, U_T=0.0, gamma_T=0.0):
        out = mmg_rates(np.asarray(y, dtype=np.float64), delta, n_p, n_bt, n_st, U_T, gamma_T, p)
        return tuple(out.tolist())

    return derivative


class MmgModel(ModelVariant):
    name = "mmg"
    component_names = COMPONENTS

    def __init__(self, params: MmgParameters):
        self.params = params
        self._fast = compile_derivative(params)
        self._constants = pack_constants(params)

    def derivative(self, y, control: ControlInput = NEUTRAL, wind: TrueWind = CALM):
        return self._fast(y, control.delta, control.n_p, control.n_bt, control.n_st, wind.U_T, wind.gamma_T)

    def fixed_step(self, y, h: float, control: ControlInput, wind: TrueWind):
        """One compiled RK4 step; the integrator uses this in fixed-step mode."""
        out = mmg_rk4(np.asarray(y, dtype=np.float64), h, control.delta, control.n_p, control.n_bt,
                      control.n_st, wind.U_T, wind.gamma_T, self._constants)
        return out.tolist()

    def forces(self, y, control: ControlInput = NEUTRAL, wind: TrueWind = CALM) -> dict:
        return mmg_forces(y, control, wind, self.params)

    def rhs(self, control: ControlInput = NEUTRAL, wind: TrueWind = CALM):
        fast = self._fast
        d, n, bt, st, UT, gT = control.delta, control.n_p, control.n_bt, control.n_st, wind.U_T, wind.gamma_T
        return lambda t, y: fast(y, d, n, bt, st, UT, gT)
