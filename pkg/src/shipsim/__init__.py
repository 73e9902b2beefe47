"""Three-degree-of-freedom ship maneuvering simulation.

Models share one state vector ``[x0, y0, psi, u, v_m, r]`` and plug into
the same integrator, actuator chain and scenario runner:

* ``kt`` and ``norrbin``: first-order yaw response;
* ``abkowitz``: whole-ship third-order polynomial;
* ``mmg``: modular hull / propeller / rudder / thruster / wind model valid
  at low speed and in all four propeller quadrants;
* ``fossen``: matrix-vector form with selectable damping.
"""

from .actuators import ActuatorLimits, ActuatorState, WindConfig, WindProcess, actuator_step, wind_at
from .integrate import Adaptive, FixedStep, IntegrationError, SimulationConfig, Trajectory, simulate
from .kinematics import CALM, ShipGeometry, ShipState, TrueWind, apparent_wind
from .variant import ControlInput, ModelVariant, NEUTRAL

__version__ = "0.1.0"

__all__ = [
    "ActuatorLimits",
    "ActuatorState",
    "Adaptive",
    "CALM",
    "ControlInput",
    "FixedStep",
    "IntegrationError",
    "ModelVariant",
    "NEUTRAL",
    "ShipGeometry",
    "ShipState",
    "SimulationConfig",
    "Trajectory",
    "TrueWind",
    "WindConfig",
    "WindProcess",
    "__version__",
    "actuator_step",
    "apparent_wind",
    "simulate",
    "wind_at",
]
