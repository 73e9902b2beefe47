"""Matrix-vector 3-DoF model ``M nu_dot + C(nu) nu + D(nu) nu = tau``.

Includes an azimuth-thruster force map and a rudder force approximation for
conventional single-screw ships. ``nu = (u, v, r)`` in the body frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kinematics import CALM, TrueWind
from .mmg.hull import crossflow_integrals
from .mmg.rudder import fujii_lift_gradient, momentum_inflow
from .variant import ControlInput, ModelVariant, NEUTRAL, kinematic_rates

DAMPING_KINDS = ("linear", "crossflow", "cubic")
PROPULSION_KINDS = ("rudder", "azimuth")


@dataclass(frozen=True)
class AzimuthThruster:
    t: float
    T_nn: float
    l_x: float
    l_y: float
    d_loss: float = 0.0


@dataclass(frozen=True)
class RudderApprox:
    """Physical rudder and propeller data for the approximate rudder forces."""

    A_R: float
    lambda_: float
    t_R: float
    a_H: float
    x_R: float
    x_H: float
    epsilon: float
    kappa: float
    eta: float
    w_P: float
    D_p: float
    k0: float
    k1: float = 0.0
    k2: float = 0.0
    rho: float = 1025.0

    @property
    def C_N(self) -> float:
        return fujii_lift_gradient(self.lambda_)


@dataclass(frozen=True)
class FossenParams:
    M: np.ndarray
    D_linear: np.ndarray
    damping: str = "linear"
    cubic: tuple = (0.0, 0.0, 0.0)
    crossflow_C_D: float = 0.0
    L: float = 1.0
    d: float = 1.0
    rho: float = 1025.0
    propulsion: str = "rudder"
    thruster: AzimuthThruster | None = None
    rudder: RudderApprox | None = None
    current: tuple = (0.0, 0.0, 0.0)
    _M_inv: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        M = np.array(self.M, dtype=float)
        D = np.array(self.D_linear, dtype=float)
        if M.shape != (3, 3) or D.shape != (3, 3):
            raise ValueError("M and D_linear must be 3x3")
        if not np.allclose(M, M.T, rtol=0, atol=1e-9 * np.abs(M).max()):
            raise ValueError("M must be symmetric")
        if np.linalg.eigvalsh(M).min() <= 0:
            raise ValueError("M must be positive definite")
        if self.damping not in DAMPING_KINDS:
            raise ValueError(f"damping must be one of {DAMPING_KINDS}")
        if self.propulsion not in PROPULSION_KINDS:
            raise ValueError(f"propulsion must be one of {PROPULSION_KINDS}")
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "D_linear", D)
        object.__setattr__(self, "cubic", tuple(float(c) for c in self.cubic))
        object.__setattr__(self, "current", tuple(float(c) for c in self.current))
        object.__setattr__(self, "_M_inv", np.linalg.inv(M))

    @property
    def M_inv(self) -> np.ndarray:
        return self._M_inv


def coriolis_from_M(nu, M) -> np.ndarray:
    """Coriolis-centripetal matrix built from the momentum ``p = M nu``.

    Skew-symmetric in the (u, v, r) layout used for planar motion, so
    ``nu @ C @ nu == 0`` holds for every ``nu``.
    """
    M = np.asarray(M, dtype=float)
    nu = np.asarray(nu, dtype=float)
    # only the translational momentum rotates with yaw
    p = M[:2, :] @ nu
    return np.array([[0.0, 0.0, -p[1]], [0.0, 0.0, p[0]], [p[1], -p[0], 0.0]])


def damping_force(nu, params: FossenParams) -> np.ndarray:
    """``D(nu) nu``; linear part plus the selected nonlinear augmentation."""
    nu = np.asarray(nu, dtype=float)
    out = params.D_linear @ nu
    if params.damping == "cubic":
        out = out + np.asarray(params.cubic) * nu**3
    elif params.damping == "crossflow":
        u, v, r = nu
        I_Y, I_N = crossflow_integrals(v, r, 1.0, params.L)
        q = 0.5 * params.rho * params.d * params.crossflow_C_D
        out = out + np.array([0.0, q * I_Y, q * I_N])
    return out


def fossen_derivative(nu, tau, tau_wind, tau_wave, params: FossenParams) -> np.ndarray:
    nu = np.asarray(nu, dtype=float)
    nu_r = nu - np.asarray(params.current)
    rhs = (
        np.asarray(tau, dtype=float)
        + np.asarray(tau_wind, dtype=float)
        + np.asarray(tau_wave, dtype=float)
        - coriolis_from_M(nu_r, params.M) @ nu_r
        - damping_force(nu_r, params)
    )
    return params.M_inv @ rhs


def azimuth_input_matrix(thruster: AzimuthThruster) -> np.ndarray:
    return np.array([[1.0, 0.0], [0.0, 1.0], [-thruster.l_y, thruster.l_x]])


def azimuth_tau(n: float, alpha: float, u_r: float, thruster: AzimuthThruster):
    """Return ``(tau, D_loss)`` for one azimuth thruster.

    ``tau`` already has the propeller loss ``d_loss * u_r`` removed; ``D_loss``
    is the 3x3 matrix ``[d_loss, 0, 0]`` to move that term onto the damping
    side when a linear input map ``B u`` is wanted.
    """
    F = (1.0 - thruster.t) * thruster.T_nn * abs(n) * n
    direction = np.array([math.cos(alpha), math.sin(alpha), thruster.l_x * math.sin(alpha) - thruster.l_y * math.cos(alpha)])
    d_loss = thruster.d_loss * abs(n) * direction
    D_loss = np.zeros((3, 3))
    D_loss[:, 0] = d_loss
    return F * direction - d_loss * u_r, D_loss


def rudder_inflow_speed(u: float, n: float, rudder: RudderApprox) -> float:
    u_p = (1.0 - rudder.w_P) * u
    nD = n * rudder.D_p
    loading = rudder.k0 * nD * nD + rudder.k1 * u_p * nD + rudder.k2 * u_p * u_p
    return momentum_inflow(u_p, loading, rudder.epsilon, rudder.kappa * rudder.epsilon, rudder.eta)


def rudder_tau_approx(delta: float, u: float, n: float, rudder: RudderApprox) -> np.ndarray:
    """Rudder force with ``U_R ~ u_R`` and ``alpha_R ~ delta``."""
    U_R = rudder_inflow_speed(u, n, rudder)
    q = rudder.rho * U_R * U_R * rudder.A_R * rudder.C_N
    s2 = math.sin(2.0 * delta)
    return np.array([
        -0.5 * (1.0 - rudder.t_R) * q * math.sin(delta) ** 2,
        -0.25 * (1.0 + rudder.a_H) * q * s2,
        -0.25 * (rudder.x_R + rudder.a_H * rudder.x_H) * q * s2,
    ])


def rudder_linear_coefficients(u: float, n: float, rudder: RudderApprox) -> tuple[float, float, float]:
    """``(X_dd, Y_d, N_d)`` so that the rudder force is about ``(-X_dd d^2, -Y_d d, -N_d d)``."""
    U_R = rudder_inflow_speed(u, n, rudder)
    q = 0.5 * rudder.rho * U_R * U_R * rudder.A_R * rudder.C_N
    return (1.0 - rudder.t_R) * q, (1.0 + rudder.a_H) * q, (rudder.x_R + rudder.a_H * rudder.x_H) * q


def kinetic_energy(nu, M) -> float:
    nu = np.asarray(nu, dtype=float)
    return 0.5 * float(nu @ np.asarray(M) @ nu)


class FossenModel(ModelVariant):
    """Fossen variant on the shared state vector.

    With ``propulsion = "rudder"`` the control channels are rudder angle and
    propeller revolutions; with ``"azimuth"`` the rudder channel steers the
    thruster (azimuth angle) instead. Wind is not modelled here.
    """

    name = "fossen"
    component_names = ("ctrl", "damp", "cor")

    def __init__(self, params: FossenParams):
        self.params = params

    def control_force(self, nu, control: ControlInput) -> np.ndarray:
        p = self.params
        u_r = nu[0] - p.current[0]
        tau = np.zeros(3)
        if p.propulsion == "azimuth":
            if p.thruster is not None:
                tau += azimuth_tau(control.n_p, control.delta, u_r, p.thruster)[0]
            return tau
        if p.thruster is not None:
            tau += azimuth_tau(control.n_p, 0.0, u_r, p.thruster)[0]
        if p.rudder is not None:
            tau += rudder_tau_approx(control.delta, u_r, control.n_p, p.rudder)
        return tau

    def derivative(self, y, control: ControlInput = NEUTRAL, wind: TrueWind = CALM):
        _, _, psi, u, v, r = y
        nu = np.array([u, v, r])
        tau = self.control_force(nu, control)
        ud, vd, rd = fossen_derivative(nu, tau, (0.0, 0.0, 0.0), (0.0, 0.0, 0.0), self.params)
        dx, dy = kinematic_rates(psi, u, v)
        return (dx, dy, r, float(ud), float(vd), float(rd))

    def forces(self, y, control: ControlInput = NEUTRAL, wind: TrueWind = CALM) -> dict:
        p = self.params
        nu = np.array(y[3:6], dtype=float)
        nu_r = nu - np.asarray(p.current)
        parts = {
            "ctrl": self.control_force(nu, control),
            "damp": -damping_force(nu_r, p),
            "cor": -coriolis_from_M(nu_r, p.M) @ nu_r,
        }
        out = {}
        for i, axis in enumerate("XYN"):
            for key, vec in parts.items():
                out[f"{axis}_{key}"] = float(vec[i])
            out[f"{axis}_total"] = sum(float(vec[i]) for vec in parts.values())
        return out
