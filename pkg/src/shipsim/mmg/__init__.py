"""Low-speed MMG model: hull, four-quadrant propeller, rudder, wind, side thrusters."""

from .hull import crossflow_integrals, hull_forces, resistance_angle
from .model import (
    COMPONENTS,
    MmgModel,
    compile_derivative,
    equation_residual,
    mmg_derivative,
    mmg_forces,
    solve_accelerations,
)
from .params import (
    HullCoeffs,
    MmgMassParams,
    MmgParameters,
    PropellerParams,
    RudderParams,
    Thruster,
    ThrusterParams,
    WindCoeffs,
)
from .propeller import Quadrant, propeller_forces, propeller_quadrant, wake_fraction
from .rudder import fujii_lift_gradient, rudder_forces, rudder_inflow
from .thrusters import thruster_forces
from .wind import wind_coefficients, wind_forces

__all__ = [
    "COMPONENTS", "HullCoeffs", "MmgMassParams", "MmgModel", "MmgParameters", "PropellerParams",
    "Quadrant", "RudderParams", "Thruster", "ThrusterParams", "WindCoeffs", "compile_derivative",
    "crossflow_integrals", "equation_residual", "fujii_lift_gradient", "hull_forces", "mmg_derivative",
    "mmg_forces", "propeller_forces", "propeller_quadrant", "resistance_angle", "rudder_forces",
    "rudder_inflow", "solve_accelerations", "thruster_forces", "wake_fraction", "wind_coefficients",
    "wind_forces",
]
