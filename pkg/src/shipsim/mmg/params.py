"""Parameter containers for the low-speed MMG model.

Lengths and positions are dimensional (m) unless the name says otherwise;
hull, wake and wind coefficients are non-dimensional. All containers are
frozen so a loaded ship can be shared between concurrent simulations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace

from ..kinematics import ShipGeometry


def _require_finite(obj) -> None:
    for f in fields(obj):
        value = getattr(obj, f.name)
        if isinstance(value, (int, float)) and not math.isfinite(value):
            raise ValueError(f"{type(obj).__name__}.{f.name} must be finite")


@dataclass(frozen=True)
class MmgMassParams:
    m: float
    m_x: float
    m_y: float
    I_zz: float
    J_zz: float
    x_G: float = 0.0
    alpha_y: float = 0.0

    def __post_init__(self):
        _require_finite(self)
        if self.m <= 0 or self.m + self.m_x <= 0 or self.m + self.m_y <= 0:
            raise ValueError("singular mass matrix: m, m+m_x and m+m_y must be positive")
        if self.yaw_inertia <= 0:
            raise ValueError("singular mass matrix: I_zz+J_zz+x_G^2 m must be positive")
        if self.determinant <= 0:
            raise ValueError("singular mass matrix: sway/yaw block is not positive definite")

    @property
    def yaw_inertia(self) -> float:
        return self.I_zz + self.J_zz + self.x_G**2 * self.m

    @property
    def coupling(self) -> float:
        """Off-diagonal sway/yaw inertia ``x_G m + m_y alpha_y``."""
        return self.x_G * self.m + self.m_y * self.alpha_y

    @property
    def determinant(self) -> float:
        return (self.m + self.m_y) * self.yaw_inertia - self.coupling**2


@dataclass(frozen=True)
class HullCoeffs:
    X_0F: float
    X_0A: float
    X_vr: float
    Y_v: float
    Y_r: float
    N_v: float
    N_r: float
    C_D: float
    C_rY: float
    C_rN: float

    def __post_init__(self):
        # resistance signs are checked by the ship loader, so faulty sets can
        # still be built on purpose and probed
        _require_finite(self)
        if self.C_D < 0:
            raise ValueError("hull.C_D must be non-negative")


@dataclass(frozen=True)
class PropellerParams:
    D_p: float
    P: float
    t_p0: float
    w_p0: float
    tau: float
    C_p: float
    x_p: float
    k0: float
    k1: float
    k2: float
    A: tuple = (0.0,) * 8
    B: tuple = (0.0,) * 8
    C3: float = 0.0
    C6: float = 0.0
    C7: float = 0.0
    C10: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(float(a) for a in self.A))
        object.__setattr__(self, "B", tuple(float(b) for b in self.B))
        if len(self.A) != 8 or len(self.B) != 8:
            raise ValueError("propeller A and B need 8 coefficients each (A1..A8, B1..B8)")
        _require_finite(self)
        if self.D_p <= 0 or self.P <= 0:
            raise ValueError("propeller D_p and P must be positive")
        if not 0 <= self.w_p0 < 1:
            raise ValueError("propeller w_p0 must lie in [0, 1)")
        if not 0 <= self.t_p0 < 1:
            raise ValueError("propeller t_p0 must lie in [0, 1)")

    def thrust_coefficient(self, J: float) -> float:
        return self.k0 + self.k1 * J + self.k2 * J * J


@dataclass(frozen=True)
class RudderParams:
    A_R: float
    H_R: float
    lambda_: float
    x_R: float
    t_R: float
    a_H: float
    x_H: float
    epsilon: float
    k_x: float
    gamma_P: float
    gamma_N: float
    l_R: float
    k_xPR: float = 0.0
    C_PR: float = 0.0

    def __post_init__(self):
        _require_finite(self)
        if self.A_R <= 0 or self.H_R <= 0 or self.lambda_ <= 0:
            raise ValueError("rudder A_R, H_R and lambda must be positive")


@dataclass(frozen=True)
class WindCoeffs:
    X0: float = 0.0
    X1: float = 0.0
    X3: float = 0.0
    X5: float = 0.0
    Y1: float = 0.0
    Y3: float = 0.0
    Y5: float = 0.0
    N1: float = 0.0
    N2: float = 0.0
    N3: float = 0.0

    def __post_init__(self):
        _require_finite(self)


@dataclass(frozen=True)
class Thruster:
    """Side thruster: lateral force ``rho n^2 D^4 K_T`` fading with ``|u|``."""

    x: float
    D: float
    K_T: float
    c_u: float = 0.0

    def __post_init__(self):
        _require_finite(self)
        if self.D <= 0:
            raise ValueError("thruster diameter must be positive")
        if self.c_u < 0:
            raise ValueError("thruster c_u must be non-negative")


@dataclass(frozen=True)
class ThrusterParams:
    bow: Thruster | None = None
    stern: Thruster | None = None


@dataclass(frozen=True)
class MmgParameters:
    geometry: ShipGeometry
    mass: MmgMassParams
    hull: HullCoeffs
    propeller: PropellerParams
    rudder: RudderParams
    wind: WindCoeffs = field(default_factory=WindCoeffs)
    thrusters: ThrusterParams = field(default_factory=ThrusterParams)

    @property
    def eta(self) -> float:
        """Propeller diameter over rudder height, always derived."""
        return self.propeller.D_p / self.rudder.H_R

    def laterally_symmetric(self) -> "MmgParameters":
        """Copy with the asymmetric propeller side forces removed.

        Zeroes ``A1..A8``/``B1..B8`` and sets ``gamma_N = gamma_P`` so the
        dynamics are odd under the port/starboard mirror.
        """
        return replace(
            self,
            propeller=replace(self.propeller, A=(0.0,) * 8, B=(0.0,) * 8),
            rudder=replace(self.rudder, gamma_N=self.rudder.gamma_P),
        )
