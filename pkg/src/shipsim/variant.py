"""The contract every dynamics model implements.

A model variant maps ``(state vector, realized control, true wind)`` to the
time derivative of ``[x0, y0, psi, u, v_m, r]``. Derivatives are plain tuples
of floats so the integrator can run without per-step array allocation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .kinematics import CALM, TrueWind


@dataclass(frozen=True)
class ControlInput:
    """Rudder angle (rad), propeller and side-thruster revolutions (rps)."""

    delta: float = 0.0
    n_p: float = 0.0
    n_bt: float = 0.0
    n_st: float = 0.0

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.delta, self.n_p, self.n_bt, self.n_st)


NEUTRAL = ControlInput()


def kinematic_rates(psi: float, u: float, v: float) -> tuple[float, float]:
    c, s = math.cos(psi), math.sin(psi)
    return u * c - v * s, u * s + v * c


class ModelVariant:
    """Base class; subclasses override :meth:`derivative`."""

    name = "model"
    #: per-sub-model force columns emitted in trajectories, besides the totals
    component_names: tuple[str, ...] = ()

    def derivative(self, y, control: ControlInput = NEUTRAL, wind: TrueWind = CALM) -> tuple:
        raise NotImplementedError

    def forces(self, y, control: ControlInput = NEUTRAL, wind: TrueWind = CALM) -> dict[str, float]:
        """Force breakdown; response models have none and report NaN totals."""
        nan = float("nan")
        return {"X_total": nan, "Y_total": nan, "N_total": nan}

    def rhs(self, control: ControlInput = NEUTRAL, wind: TrueWind = CALM):
        """Bind inputs and return ``f(t, y)`` for the integrators."""
        derivative = self.derivative

        def f(t, y):
            return derivative(y, control, wind)

        return f
