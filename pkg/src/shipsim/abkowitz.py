"""Third-order whole-ship polynomial model.

Forces are polynomials in the surge perturbation ``du = u - U``, sway ``v``,
yaw rate ``r`` and rudder angle ``delta``; accelerations follow from the
closed-form inverse of the (surge, sway/yaw) acceleration-coefficient block.
Coefficient names follow the monomial they multiply: ``Y_vrr`` multiplies
``v*r**2``, ``N_star_u`` multiplies ``du`` in the yaw polynomial, and so on.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields

from .kinematics import CALM
from .variant import ControlInput, ModelVariant, NEUTRAL, kinematic_rates

X_TERMS = (
    "X_star", "X_u", "X_uu", "X_uuu", "X_vv", "X_rr", "X_dd", "X_vvu", "X_rru", "X_ddu",
    "X_vr", "X_vd", "X_rd", "X_vru", "X_vdu", "X_rdu",
)
Y_TERMS = (
    "Y_star", "Y_star_u", "Y_star_uu", "Y_v", "Y_vvv", "Y_vrr", "Y_vdd", "Y_vu", "Y_vuu",
    "Y_r", "Y_rrr", "Y_rvv", "Y_rdd", "Y_ru", "Y_ruu", "Y_d", "Y_ddd", "Y_dvv", "Y_drr",
    "Y_du", "Y_duu", "Y_vrd",
)
N_TERMS = tuple("N" + name[1:] for name in Y_TERMS)
ACCEL_TERMS = ("X_udot", "Y_vdot", "Y_rdot", "N_vdot", "N_rdot")


@dataclass(frozen=True)
class AbkowitzCoefficients:
    """Dimensional coefficient set. ``d`` in a name stands for delta.

    Every polynomial coefficient defaults to zero so sparse sets stay short.
    """

    U: float
    m: float
    x_G: float
    I_z: float
    X_udot: float = 0.0
    Y_vdot: float = 0.0
    Y_rdot: float = 0.0
    N_vdot: float = 0.0
    N_rdot: float = 0.0
    poly: dict = field(default_factory=dict)

    def __post_init__(self):
        unknown = set(self.poly) - set(X_TERMS + Y_TERMS + N_TERMS)
        if unknown:
            raise ValueError(f"unknown Abkowitz coefficient(s): {sorted(unknown)}")
        full = {name: float(self.poly.get(name, 0.0)) for name in X_TERMS + Y_TERMS + N_TERMS}
        object.__setattr__(self, "poly", full)
        if self.surge_mass == 0:
            raise ValueError("singular acceleration matrix: m - X_udot == 0")
        if self.determinant == 0:
            raise ValueError("singular acceleration matrix: sway/yaw block determinant is zero")

    def __getattr__(self, name):
        # poly coefficients read as attributes: coeffs.Y_v
        poly = self.__dict__.get("poly")
        if poly is not None and name in poly:
            return poly[name]
        raise AttributeError(name)

    @property
    def surge_mass(self) -> float:
        return self.m - self.X_udot

    @property
    def determinant(self) -> float:
        return (self.m - self.Y_vdot) * (self.I_z - self.N_rdot) - (self.m * self.x_G - self.N_vdot) * (
            self.m * self.x_G - self.Y_rdot
        )

    def replace(self, **changes) -> "AbkowitzCoefficients":
        base = {f.name: getattr(self, f.name) for f in fields(self) if f.name != "poly"}
        poly = dict(self.poly)
        for key, value in changes.items():
            if key in base:
                base[key] = value
            else:
                poly[key] = value
        return AbkowitzCoefficients(**base, poly=poly)


@dataclass(frozen=True)
class AbkowitzState:
    du: float
    v: float
    r: float
    delta: float


def abkowitz_forces(state: AbkowitzState, c: AbkowitzCoefficients) -> tuple[float, float, float]:
    p = c.poly
    du, v, r, d = state.du, state.v, state.r, state.delta
    u = c.U + du
    m = c.m
    du2, v2, r2, d2 = du * du, v * v, r * r, d * d

    f1 = (
        p["X_star"] + p["X_u"] * du + p["X_uu"] * du2 + p["X_uuu"] * du2 * du
        + p["X_vv"] * v2 + (p["X_rr"] + m * c.x_G) * r2 + p["X_dd"] * d2
        + p["X_vvu"] * v2 * du + p["X_rru"] * r2 * du + p["X_ddu"] * d2 * du
        + (p["X_vr"] + m) * v * r + p["X_vd"] * v * d + p["X_rd"] * r * d
        + p["X_vru"] * v * r * du + p["X_vdu"] * v * d * du + p["X_rdu"] * r * d * du
    )
    f2 = (
        p["Y_star"] + p["Y_star_u"] * du + p["Y_star_uu"] * du2
        + p["Y_v"] * v + p["Y_vvv"] * v2 * v + p["Y_vrr"] * v * r2 + p["Y_vdd"] * v * d2
        + p["Y_vu"] * v * du + p["Y_vuu"] * v * du2
        + (p["Y_r"] - m * u) * r + p["Y_rrr"] * r2 * r + p["Y_rvv"] * r * v2 + p["Y_rdd"] * r * d2
        + p["Y_ru"] * r * du + p["Y_ruu"] * r * du2
        + p["Y_d"] * d + p["Y_ddd"] * d2 * d + p["Y_dvv"] * d * v2 + p["Y_drr"] * d * r2
        + p["Y_du"] * d * du + p["Y_duu"] * d * du2 + p["Y_vrd"] * v * r * d
    )
    f3 = (
        p["N_star"] + p["N_star_u"] * du + p["N_star_uu"] * du2
        + p["N_v"] * v + p["N_vvv"] * v2 * v + p["N_vrr"] * v * r2 + p["N_vdd"] * v * d2
        + p["N_vu"] * v * du + p["N_vuu"] * v * du2
        + (p["N_r"] - m * c.x_G * u) * r + p["N_rrr"] * r2 * r + p["N_rvv"] * r * v2 + p["N_rdd"] * r * d2
        + p["N_ru"] * r * du + p["N_ruu"] * r * du2
        + p["N_d"] * d + p["N_ddd"] * d2 * d + p["N_dvv"] * d * v2 + p["N_drr"] * d * r2
        + p["N_du"] * d * du + p["N_duu"] * d * du2 + p["N_vrd"] * v * r * d
    )
    return f1, f2, f3


def accelerations_from_forces(f1: float, f2: float, f3: float, c: AbkowitzCoefficients) -> tuple[float, float, float]:
    det = c.determinant
    a = c.I_z - c.N_rdot
    b = c.m * c.x_G - c.Y_rdot
    e = c.m * c.x_G - c.N_vdot
    g = c.m - c.Y_vdot
    return f1 / c.surge_mass, (a * f2 - b * f3) / det, (g * f3 - e * f2) / det


def abkowitz_accelerations(state: AbkowitzState, c: AbkowitzCoefficients) -> tuple[float, float, float]:
    return accelerations_from_forces(*abkowitz_forces(state, c), c)


def abkowitz_derivative(y, delta: float, c: AbkowitzCoefficients) -> tuple:
    """Full 6-state derivative with ``du = u - U``."""
    _, _, psi, u, v, r = y
    dx, dy = kinematic_rates(psi, u, v)
    ud, vd, rd = abkowitz_accelerations(AbkowitzState(u - c.U, v, r, delta), c)
    return (dx, dy, r, ud, vd, rd)


class AbkowitzModel(ModelVariant):
    name = "abkowitz"

    def __init__(self, coeffs: AbkowitzCoefficients):
        self.coeffs = coeffs

    def derivative(self, y, control: ControlInput = NEUTRAL, wind=CALM):
        return abkowitz_derivative(y, control.delta, self.coeffs)

    def forces(self, y, control: ControlInput = NEUTRAL, wind=CALM):
        _, _, _, u, v, r = y
        f1, f2, f3 = abkowitz_forces(AbkowitzState(u - self.coeffs.U, v, r, control.delta), self.coeffs)
        return {"X_total": f1, "Y_total": f2, "N_total": f3}
