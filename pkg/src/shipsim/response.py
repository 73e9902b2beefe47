"""Yaw-response models: Nomoto first and second order, Norrbin cubic.

Also maps a linear sway/yaw derivative set onto second-order Nomoto
coefficients. The derivative set uses the non-dimensional form where time is
scaled by ``L/U``; the mapping reintroduces the ``U/L`` factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .variant import ControlInput, ModelVariant, NEUTRAL, kinematic_rates
from .kinematics import CALM


class DegenerateDerivativeSet(ValueError):
    pass


class OscillatoryPair(ValueError):
    """Raised when ``T1`` and ``T2`` would be complex; carries sum and product."""

    def __init__(self, T_sum: float, T_product: float):
        super().__init__(
            f"oscillatory pair: T1+T2={T_sum!r}, T1*T2={T_product!r} give complex time constants"
        )
        self.T_sum = T_sum
        self.T_product = T_product


@dataclass(frozen=True)
class NomotoKT:
    K: float
    T: float

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError("NomotoKT.T must be positive")


@dataclass(frozen=True)
class Nomoto2nd:
    K: float
    T1: float
    T2: float
    T3: float

    def __post_init__(self):
        if not (self.T1 > 0 and self.T2 > 0):
            raise ValueError("Nomoto2nd.T1 and T2 must be positive")


@dataclass(frozen=True)
class NorrbinModel:
    K: float
    T: float
    c3: float = 0.0

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError("NorrbinModel.T must be positive")
        if self.c3 < 0:
            raise ValueError("NorrbinModel.c3 must be non-negative")


@dataclass(frozen=True)
class LinearDerivativeSet:
    """Non-dimensional linear sway/yaw derivatives around straight running.

    ``m_x``/``m_y`` in the combined inertia terms are ``m_ + m_x_`` and
    ``m_ + m_y_``; the yaw inertia is ``I_zz_ + J_zz_``.
    """

    m_: float
    m_x_: float
    m_y_: float
    I_zz_: float
    J_zz_: float
    C_Ybeta: float
    C_Yr: float
    C_Ydelta: float
    C_Nbeta: float
    C_Nr: float
    C_Ndelta: float
    U: float
    L: float

    def __post_init__(self):
        if self.U <= 0 or self.L <= 0:
            raise DegenerateDerivativeSet("degenerate derivative set: U and L must be positive")
        if self.denominator == 0:
            raise DegenerateDerivativeSet("degenerate derivative set: zero shared denominator")
        if self.gain_numerator == 0:
            raise DegenerateDerivativeSet("degenerate derivative set: zero rudder gain numerator")

    @property
    def mass_x(self) -> float:
        return self.m_ + self.m_x_

    @property
    def mass_y(self) -> float:
        return self.m_ + self.m_y_

    @property
    def inertia(self) -> float:
        return self.I_zz_ + self.J_zz_

    @property
    def denominator(self) -> float:
        return self.C_Ybeta * self.C_Nr - (self.mass_x - self.C_Yr) * self.C_Nbeta

    @property
    def gain_numerator(self) -> float:
        return self.C_Nbeta * self.C_Ydelta + self.C_Ybeta * self.C_Ndelta

    def system_matrices(self):
        """Dimensional ``(E, A, b)`` with ``E d/dt[beta, r] = A [beta, r] + b delta``."""
        s = self.L / self.U
        E = np.array([[self.mass_y * s, 0.0], [0.0, self.inertia * s * s]])
        A = np.array(
            [
                [-self.C_Ybeta, (self.mass_x - self.C_Yr) * s],
                [self.C_Nbeta, -self.C_Nr * s],
            ]
        )
        b = np.array([self.C_Ydelta, self.C_Ndelta])
        return E, A, b


def kt_rdot(r: float, delta: float, model: NomotoKT) -> float:
    return (model.K * delta - r) / model.T


def kt_step_response(model: NomotoKT, delta_const: float, t: float) -> float:
    """Closed-form yaw rate from rest under a constant rudder angle."""
    if t < 0:
        raise ValueError("t must be non-negative")
    return model.K * delta_const * -math.expm1(-t / model.T)


def norrbin_rdot(r: float, delta: float, model: NorrbinModel) -> float:
    return (model.K * delta - r - model.c3 * r**3) / model.T


def nomoto2nd_state_derivative(r: float, rdot: float, delta: float, delta_dot: float, model: Nomoto2nd) -> float:
    """Second time derivative of ``r``."""
    return (
        model.K * delta + model.K * model.T3 * delta_dot - r - (model.T1 + model.T2) * rdot
    ) / (model.T1 * model.T2)


def derive_nomoto_from_linear(derivs: LinearDerivativeSet) -> Nomoto2nd:
    den = derivs.denominator
    num = derivs.gain_numerator
    s = derivs.L / derivs.U
    K = num / den / s
    T_sum = s * (derivs.mass_y * derivs.C_Nr + derivs.inertia * derivs.C_Ybeta) / den
    T_product = s * s * derivs.mass_y * derivs.inertia / den
    T3 = s * derivs.mass_y * derivs.C_Ndelta / num
    disc = T_sum * T_sum - 4.0 * T_product
    if disc < 0:
        raise OscillatoryPair(T_sum, T_product)
    root = math.sqrt(disc)
    T1 = 0.5 * (T_sum + root)
    # avoids cancellation in the smaller root
    T2 = T_product / T1 if T1 != 0 else 0.5 * (T_sum - root)
    return Nomoto2nd(K=K, T1=T1, T2=T2, T3=T3)


def nondim_kt(model: NomotoKT, U: float, L: float) -> tuple[float, float]:
    if U <= 0 or L <= 0:
        raise ValueError("U and L must be positive")
    return model.K / (U / L), model.T / (L / U)


def redim_kt(K_: float, T_: float, U: float, L: float) -> NomotoKT:
    if U <= 0 or L <= 0:
        raise ValueError("U and L must be positive")
    return NomotoKT(K=K_ * U / L, T=T_ * L / U)


class KTModel(ModelVariant):
    """First-order yaw model; surge speed is frozen at its initial value."""

    name = "kt"

    def __init__(self, model: NomotoKT):
        self.model = model

    def derivative(self, y, control: ControlInput = NEUTRAL, wind=CALM):
        _, _, psi, u, v, r = y
        dx, dy = kinematic_rates(psi, u, v)
        m = self.model
        return (dx, dy, r, 0.0, 0.0, (m.K * control.delta - r) / m.T)


class NorrbinVariant(ModelVariant):
    name = "norrbin"

    def __init__(self, model: NorrbinModel):
        self.model = model

    def derivative(self, y, control: ControlInput = NEUTRAL, wind=CALM):
        _, _, psi, u, v, r = y
        dx, dy = kinematic_rates(psi, u, v)
        m = self.model
        return (dx, dy, r, 0.0, 0.0, (m.K * control.delta - r - m.c3 * r * r * r) / m.T)
