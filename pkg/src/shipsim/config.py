"""TOML loaders for ship and scenario files.

Both loaders reject unknown and missing keys; the error message starts with
the file name and the dotted key path of the offending entry. Angles in
scenario files carry a ``_deg`` suffix and are converted to radians here.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .abkowitz import ACCEL_TERMS, N_TERMS, X_TERMS, Y_TERMS, AbkowitzCoefficients, AbkowitzModel
from .actuators import ActuatorLimits, WindConfig
from .fossen import AzimuthThruster, FossenModel, FossenParams, RudderApprox
from .integrate import Adaptive, FixedStep, SimulationConfig
from .kinematics import ShipGeometry, ShipState
from .maneuvers import CrabbingManeuver, CrashAstern, RandomManeuver, Straight, Turning, ZigZag
from .mmg import (
    HullCoeffs,
    MmgMassParams,
    MmgModel,
    MmgParameters,
    PropellerParams,
    RudderParams,
    Thruster,
    ThrusterParams,
    WindCoeffs,
)
from .response import KTModel, NomotoKT, NorrbinModel, NorrbinVariant
from .variant import ModelVariant

MODEL_KINDS = ("kt", "norrbin", "abkowitz", "mmg", "fossen")
DATA_DIR = Path(__file__).parent / "data"
BUNDLED_SHIP = DATA_DIR / "ship.toml"


class ConfigError(ValueError):
    def __init__(self, source: str, key_path: str, message: str):
        self.source = source
        self.key_path = key_path
        super().__init__(f"{source}: {key_path}: {message}" if key_path else f"{source}: {message}")


class _Reader:
    """Tracks file name and key path while pulling typed values out of tables."""

    def __init__(self, source: str):
        self.source = source

    def fail(self, path: str, message: str):
        raise ConfigError(self.source, path, message)

    def table(self, doc: dict, path: str, required: bool = True) -> dict | None:
        node = doc
        for part in path.split("."):
            if not isinstance(node, dict) or part not in node:
                if required:
                    self.fail(path, "missing required section")
                return None
            node = node[part]
        if not isinstance(node, dict):
            self.fail(path, "expected a table")
        return node

    def number(self, value, path: str) -> float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.fail(path, f"expected a number, got {value!r}")
        value = float(value)
        if not math.isfinite(value):
            self.fail(path, "must be finite")
        return value

    def fields(self, table: dict, path: str, required=(), optional=None, handled=()) -> dict:
        """Numbers for ``required`` and ``optional`` keys.

        Keys in ``handled`` are read elsewhere by the caller; any other key is
        an error.
        """
        optional = optional or {}
        known = set(required) | set(optional) | set(handled)
        for key in table:
            if key not in known:
                self.fail(f"{path}.{key}", "unknown key")
        out = {}
        for key in required:
            if key not in table:
                self.fail(f"{path}.{key}", "missing required key")
            out[key] = self.number(table[key], f"{path}.{key}")
        for key, default in optional.items():
            out[key] = self.number(table[key], f"{path}.{key}") if key in table else default
        return out

    def build(self, path: str, factory, **kwargs):
        """Call a parameter constructor and turn its ValueError into a ConfigError."""
        try:
            return factory(**kwargs)
        except ValueError as exc:
            self.fail(path, str(exc))

    def string(self, table: dict, key: str, path: str, choices=None, default=None) -> str:
        if key not in table:
            if default is None:
                self.fail(f"{path}.{key}" if path else key, "missing required key")
            return default
        value = table[key]
        where = f"{path}.{key}" if path else key
        if not isinstance(value, str):
            self.fail(where, f"expected a string, got {value!r}")
        if choices is not None and value not in choices:
            self.fail(where, f"must be one of {', '.join(choices)}; got {value!r}")
        return value

    def vector(self, value, path: str, shape) -> list:
        import numpy as np

        try:
            arr = np.array(value, dtype=float)
        except (TypeError, ValueError):
            self.fail(path, f"expected a numeric array of shape {shape}")
        if arr.shape != tuple(shape) or not np.all(np.isfinite(arr)):
            self.fail(path, f"expected a finite numeric array of shape {shape}")
        return arr.tolist()


def _load_toml(path: Path) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(str(path), "", "file not found") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(str(path), "", f"invalid TOML: {exc}") from None


# --- ship file -------------------------------------------------------------

_GEOMETRY = (("L_pp", "L_OA", "d", "A_T", "A_L"), {"rho": 1025.0, "rho_A": 1.225})
_MASS = (("m", "m_x", "m_y", "I_zz", "J_zz"), {"x_G": 0.0, "alpha_y": 0.0})
_HULL = (("X_0F", "X_0A", "X_vr", "Y_v", "Y_r", "N_v", "N_r", "C_D", "C_rY", "C_rN"), {})
_PROPELLER = (
    ("D_p", "P", "t_p0", "w_p0", "tau", "C_p", "x_p", "k0", "k1", "k2"),
    {**{f"A{i}": 0.0 for i in range(1, 9)}, **{f"B{i}": 0.0 for i in range(1, 9)},
     "C3": 0.0, "C6": 0.0, "C7": 0.0, "C10": 0.0},
)
_RUDDER = (
    ("A_R", "H_R", "lambda", "x_R", "t_R", "a_H", "x_H", "epsilon", "kappa_x", "gamma_P", "gamma_N", "l_R"),
    {"k_xPR": 0.0, "C_PR": 0.0},
)
_WIND = ((), {k: 0.0 for k in ("X0", "X1", "X3", "X5", "Y1", "Y3", "Y5", "N1", "N2", "N3")})
_THRUSTER = (("x", "D", "K_T"), {"c_u": 0.0})
_MMG_SECTIONS = ("mass", "hull", "propeller", "rudder", "wind", "thrusters")
_FOSSEN_THRUSTER = (("t", "T_nn", "l_x", "l_y"), {"d_loss": 0.0})
_FOSSEN_RUDDER = (
    ("A_R", "lambda", "t_R", "a_H", "x_R", "x_H", "epsilon", "kappa", "eta", "w_P", "D_p", "k0"),
    {"k1": 0.0, "k2": 0.0},
)


@dataclass(frozen=True)
class ShipConfig:
    """Everything one ship file defines; sections that are absent stay ``None``."""

    name: str
    path: Path
    geometry: ShipGeometry
    actuators: ActuatorLimits
    mmg: MmgParameters | None = None
    kt: NomotoKT | None = None
    norrbin: NorrbinModel | None = None
    abkowitz: AbkowitzCoefficients | None = None
    fossen: FossenParams | None = None

    def available_models(self) -> tuple[str, ...]:
        return tuple(k for k in MODEL_KINDS if getattr(self, k) is not None)

    def model(self, kind: str) -> ModelVariant:
        if kind not in MODEL_KINDS:
            raise ValueError(f"unknown model {kind!r}; choose from {', '.join(MODEL_KINDS)}")
        params = getattr(self, kind)
        if params is None:
            raise ConfigError(str(self.path), kind, f"ship file has no [{kind}] parameters")
        return {
            "kt": KTModel,
            "norrbin": NorrbinVariant,
            "abkowitz": AbkowitzModel,
            "mmg": MmgModel,
            "fossen": FossenModel,
        }[kind](params)


def _actuator_limits(rd: _Reader, table: dict | None, path: str, base: ActuatorLimits | None = None) -> ActuatorLimits:
    base = base or ActuatorLimits()
    defaults = {
        "delta_max_deg": math.degrees(base.delta_max),
        "delta_rate_max_deg": math.degrees(base.delta_rate_max),
        "n_max": base.n_max,
        "n_rate_max": base.n_rate_max,
        "thruster_max": base.thruster_max,
        "thruster_rate_max": base.thruster_rate_max,
        "dead_time": base.dead_time,
        "lag": base.lag,
    }
    if table is None:
        return base
    f = rd.fields(table, path, (), defaults)
    return rd.build(
        path,
        ActuatorLimits,
        delta_max=math.radians(f["delta_max_deg"]),
        delta_rate_max=math.radians(f["delta_rate_max_deg"]),
        n_max=f["n_max"],
        n_rate_max=f["n_rate_max"],
        thruster_max=f["thruster_max"],
        thruster_rate_max=f["thruster_rate_max"],
        dead_time=f["dead_time"],
        lag=f["lag"],
    )


def _mmg_parameters(rd: _Reader, doc: dict, geometry: ShipGeometry, strict: bool) -> MmgParameters:
    mass = rd.fields(rd.table(doc, "mass"), "mass", *_MASS)
    hull = rd.fields(rd.table(doc, "hull"), "hull", *_HULL)
    if strict:
        for key in ("X_0F", "X_0A"):
            if not hull[key] < 0:
                rd.fail(f"hull.{key}", "must be negative (resistance opposes motion)")
    prop = rd.fields(rd.table(doc, "propeller"), "propeller", *_PROPELLER)
    rudder_table = rd.table(doc, "rudder")
    if "eta" in rudder_table:
        rd.fail("rudder.eta", "eta is derived as propeller.D_p / rudder.H_R; remove this key")
    rud = rd.fields(rudder_table, "rudder", *_RUDDER)
    wind_table = rd.table(doc, "wind", required=False)
    wind = rd.fields(wind_table, "wind", *_WIND) if wind_table is not None else {}

    units = {}
    thr_table = rd.table(doc, "thrusters", required=False)
    if thr_table is not None:
        rd.fields(thr_table, "thrusters", (), {}, handled=("bow", "stern"))
        for pos in ("bow", "stern"):
            sub = rd.table(doc, f"thrusters.{pos}", required=False)
            if sub is not None:
                units[pos] = rd.build(f"thrusters.{pos}", Thruster, **rd.fields(sub, f"thrusters.{pos}", *_THRUSTER))

    A = tuple(prop.pop(f"A{i}") for i in range(1, 9))
    B = tuple(prop.pop(f"B{i}") for i in range(1, 9))
    rud["lambda_"] = rud.pop("lambda")
    rud["k_x"] = rud.pop("kappa_x")
    return MmgParameters(
        geometry=geometry,
        mass=rd.build("mass", MmgMassParams, **mass),
        hull=rd.build("hull", HullCoeffs, **hull),
        propeller=rd.build("propeller", PropellerParams, A=A, B=B, **prop),
        rudder=rd.build("rudder", RudderParams, **rud),
        wind=rd.build("wind", WindCoeffs, **wind),
        thrusters=ThrusterParams(**units),
    )


def _abkowitz(rd: _Reader, doc: dict) -> AbkowitzCoefficients:
    table = rd.table(doc, "abkowitz")
    f = rd.fields(table, "abkowitz", ("U", "m", "I_z"), {"x_G": 0.0, **{k: 0.0 for k in ACCEL_TERMS}}, handled=("poly",))
    poly_table = rd.table(doc, "abkowitz.poly", required=False) or {}
    poly = rd.fields(poly_table, "abkowitz.poly", (), {k: 0.0 for k in X_TERMS + Y_TERMS + N_TERMS})
    poly = {k: v for k, v in poly.items() if v != 0.0}
    return rd.build("abkowitz", AbkowitzCoefficients, poly=poly, **f)


def _fossen(rd: _Reader, doc: dict, geometry: ShipGeometry) -> FossenParams:
    table = rd.table(doc, "fossen")
    rd.fields(table, "fossen", (), {"crossflow_C_D": 0.0},
              handled=("M", "D_linear", "damping", "cubic", "propulsion", "current", "thruster", "rudder"))
    for key in ("M", "D_linear"):
        if key not in table:
            rd.fail(f"fossen.{key}", "missing required key")
    thruster = None
    sub = rd.table(doc, "fossen.thruster", required=False)
    if sub is not None:
        thruster = rd.build("fossen.thruster", AzimuthThruster, **rd.fields(sub, "fossen.thruster", *_FOSSEN_THRUSTER))
    rudder = None
    sub = rd.table(doc, "fossen.rudder", required=False)
    if sub is not None:
        rud = rd.fields(sub, "fossen.rudder", *_FOSSEN_RUDDER)
        rud["lambda_"] = rud.pop("lambda")
        rudder = rd.build("fossen.rudder", RudderApprox, rho=geometry.rho, **rud)
    return rd.build(
        "fossen",
        FossenParams,
        M=rd.vector(table["M"], "fossen.M", (3, 3)),
        D_linear=rd.vector(table["D_linear"], "fossen.D_linear", (3, 3)),
        damping=rd.string(table, "damping", "fossen", default="linear"),
        cubic=tuple(rd.vector(table.get("cubic", [0.0, 0.0, 0.0]), "fossen.cubic", (3,))),
        crossflow_C_D=rd.number(table.get("crossflow_C_D", 0.0), "fossen.crossflow_C_D"),
        L=geometry.L_pp,
        d=geometry.d,
        rho=geometry.rho,
        propulsion=rd.string(table, "propulsion", "fossen", default="rudder"),
        thruster=thruster,
        rudder=rudder,
        current=tuple(rd.vector(table.get("current", [0.0, 0.0, 0.0]), "fossen.current", (3,))),
    )


def parse_ship(doc: dict, source: str = "<ship>", path: Path | None = None, strict: bool = True) -> ShipConfig:
    """Build a :class:`ShipConfig` from an already-parsed document.

    ``strict=False`` skips the resistance-sign check so deliberately faulty
    ships can be loaded for probing.
    """
    rd = _Reader(source)
    top = ("name", "geometry", "actuators", "kt", "norrbin", "abkowitz", "fossen") + _MMG_SECTIONS
    for key in doc:
        if key not in top:
            rd.fail(key, "unknown key")
    name = rd.string(doc, "name", "", default="ship")
    geometry = rd.build("geometry", ShipGeometry, **rd.fields(rd.table(doc, "geometry"), "geometry", *_GEOMETRY))
    actuators = _actuator_limits(rd, rd.table(doc, "actuators", required=False), "actuators")

    mmg = None
    if any(key in doc for key in _MMG_SECTIONS):
        mmg = _mmg_parameters(rd, doc, geometry, strict)
    kt = norrbin = abk = fossen = None
    if "kt" in doc:
        kt = rd.build("kt", NomotoKT, **rd.fields(rd.table(doc, "kt"), "kt", ("K", "T")))
    if "norrbin" in doc:
        norrbin = rd.build("norrbin", NorrbinModel, **rd.fields(rd.table(doc, "norrbin"), "norrbin", ("K", "T"), {"c3": 0.0}))
    if "abkowitz" in doc:
        abk = _abkowitz(rd, doc)
    if "fossen" in doc:
        fossen = _fossen(rd, doc, geometry)
    return ShipConfig(name, path or Path(source), geometry, actuators, mmg, kt, norrbin, abk, fossen)


def load_ship(path: str | Path = BUNDLED_SHIP, strict: bool = True) -> ShipConfig:
    path = Path(path)
    return parse_ship(_load_toml(path), str(path), path, strict)


# --- scenario file ---------------------------------------------------------

_MANEUVERS = ("zigzag", "turning", "crabbing", "crash_astern", "straight", "random")


@dataclass(frozen=True)
class Scenario:
    name: str
    path: Path
    ship: ShipConfig
    model: str
    maneuver: object
    initial: ShipState = field(default_factory=ShipState)
    simulation: SimulationConfig = field(default_factory=lambda: SimulationConfig(100.0))
    wind: WindConfig = field(default_factory=WindConfig)
    actuators: ActuatorLimits = field(default_factory=ActuatorLimits)

    def build_model(self) -> ModelVariant:
        return self.ship.model(self.model)


def _maneuver(rd: _Reader, table: dict, t_end: float):
    kind = rd.string(table, "type", "maneuver", choices=_MANEUVERS)
    path = "maneuver"
    if kind == "zigzag":
        f = rd.fields(table, path, ("delta_deg", "psi_switch_deg"), {"n_p": 0.0, "hysteresis_deg": 0.1}, handled=("type",))
        return rd.build(path, ZigZag, delta=math.radians(f["delta_deg"]), psi_switch=math.radians(f["psi_switch_deg"]),
                        n_p=f["n_p"], hysteresis=math.radians(f["hysteresis_deg"]))
    if kind == "turning":
        f = rd.fields(table, path, ("delta_deg",), {"n_p": 0.0}, handled=("type",))
        return rd.build(path, Turning, delta=math.radians(f["delta_deg"]), n_p=f["n_p"])
    if kind == "crabbing":
        f = rd.fields(table, path, (), {"n_bt": 0.0, "n_st": 0.0, "delta_deg": 0.0, "n_p": 0.0}, handled=("type",))
        return rd.build(path, CrabbingManeuver, n_bt=f["n_bt"], n_st=f["n_st"], delta=math.radians(f["delta_deg"]), n_p=f["n_p"])
    if kind == "crash_astern":
        f = rd.fields(table, path, ("n_ahead", "n_reverse"), {"t_reverse": 0.0}, handled=("type",))
        return rd.build(path, CrashAstern, **f)
    if kind == "straight":
        f = rd.fields(table, path, (), {"n_p": 0.0, "delta_deg": 0.0}, handled=("type",))
        return rd.build(path, Straight, n_p=f["n_p"], delta=math.radians(f["delta_deg"]))
    f = rd.fields(
        table, path, ("seed", "hold_min", "hold_max", "delta_max_deg", "n_min", "n_max"), {}, handled=("type",)
    )
    if f["seed"] != int(f["seed"]):
        rd.fail("maneuver.seed", "must be an integer")
    return rd.build(path, RandomManeuver, seed=int(f["seed"]), t_end=t_end, hold_min=f["hold_min"],
                    hold_max=f["hold_max"], delta_max=math.radians(f["delta_max_deg"]), n_min=f["n_min"], n_max=f["n_max"])


def _simulation(rd: _Reader, table: dict) -> SimulationConfig:
    mode = rd.string(table, "mode", "simulation", choices=("fixed", "adaptive"), default="fixed")
    if mode == "fixed":
        f = rd.fields(table, "simulation", ("t_end",), {"dt": 0.1, "sample_interval": None, "control_period": 1.0},
                      handled=("mode", "real_time_budget"))
        step = rd.build("simulation", FixedStep, dt=f["dt"])
    else:
        f = rd.fields(table, "simulation", ("t_end",),
                      {"rel_tol": 1e-6, "abs_tol": 1e-9, "dt_min": 1e-6, "dt_max": 1.0, "sample_interval": None,
                       "control_period": 1.0}, handled=("mode", "real_time_budget"))
        step = rd.build("simulation", Adaptive, rel_tol=f["rel_tol"], abs_tol=f["abs_tol"], dt_min=f["dt_min"], dt_max=f["dt_max"])
    budget = table.get("real_time_budget", False)
    if not isinstance(budget, bool):
        rd.fail("simulation.real_time_budget", "expected true or false")
    return rd.build("simulation", SimulationConfig, t_end=f["t_end"], mode=step, sample_interval=f["sample_interval"],
                    control_period=f["control_period"], real_time_budget=budget)


def _wind(rd: _Reader, table: dict | None) -> WindConfig:
    if table is None:
        return WindConfig()
    f = rd.fields(table, "wind", (), {"U_T": 0.0, "gamma_T_deg": 0.0, "gust_speed": 0.0, "gust_direction_deg": 0.0,
                                      "gust_period": 1.0, "gust_filter": 10.0, "seed": 0.0}, handled=("gusts",))
    gusts = table.get("gusts", False)
    if not isinstance(gusts, bool):
        rd.fail("wind.gusts", "expected true or false")
    return rd.build("wind", WindConfig, U_T=f["U_T"], gamma_T=math.radians(f["gamma_T_deg"]), gusts=gusts,
                    gust_speed=f["gust_speed"], gust_direction=math.radians(f["gust_direction_deg"]),
                    gust_period=f["gust_period"], gust_filter=f["gust_filter"], seed=int(f["seed"]))


def _initial(rd: _Reader, table: dict | None) -> ShipState:
    if table is None:
        return ShipState()
    f = rd.fields(table, "initial", (), {"x0": 0.0, "y0": 0.0, "psi_deg": 0.0, "u": 0.0, "v_m": 0.0, "r_deg_s": 0.0})
    return ShipState(f["x0"], f["y0"], math.radians(f["psi_deg"]), f["u"], f["v_m"], math.radians(f["r_deg_s"]))


def parse_scenario(doc: dict, source: str = "<scenario>", base_dir: Path | None = None, strict: bool = True) -> Scenario:
    rd = _Reader(source)
    for key in doc:
        if key not in ("name", "ship", "model", "initial", "simulation", "maneuver", "wind", "actuators"):
            rd.fail(key, "unknown key")
    ship_ref = rd.string(doc, "ship", "")
    ship_path = Path(ship_ref)
    if not ship_path.is_absolute():
        ship_path = (base_dir or Path.cwd()) / ship_path
    ship = load_ship(ship_path, strict)
    model = rd.string(doc, "model", "", choices=MODEL_KINDS)
    if getattr(ship, model) is None:
        rd.fail("model", f"ship file {ship_path} has no [{model}] parameters")
    simulation = _simulation(rd, rd.table(doc, "simulation"))
    maneuver = _maneuver(rd, rd.table(doc, "maneuver"), simulation.t_end)
    actuators = _actuator_limits(rd, rd.table(doc, "actuators", required=False), "actuators", ship.actuators)
    try:
        maneuver.check_limits(actuators)
    except ValueError as exc:
        rd.fail("maneuver", str(exc))
    return Scenario(
        name=rd.string(doc, "name", "", default=Path(source).stem),
        path=Path(source),
        ship=ship,
        model=model,
        maneuver=maneuver,
        initial=_initial(rd, rd.table(doc, "initial", required=False)),
        simulation=simulation,
        wind=_wind(rd, rd.table(doc, "wind", required=False)),
        actuators=actuators,
    )


def load_scenario(path: str | Path, strict: bool = True) -> Scenario:
    path = Path(path)
    return parse_scenario(_load_toml(path), str(path), path.parent, strict)
