"""Time integration of the coupled ship, actuator, wind and controller loop.

Two modes share one driver:

* fixed step: classical RK4 at ``dt``; the controller is sampled on its own
  period, actuators advance once per step and hold their output over it;
* adaptive: Dormand-Prince 5(4) between output samples; actuators advance
  once per sample interval and the input is held over it.

Heading is wrapped to (-pi, pi] only after accepted steps so the right-hand
side stays smooth within a step.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .actuators import ActuatorLimits, ActuatorState, WindConfig, WindProcess
from .kinematics import ShipState, TrueWind, apparent_wind_components, wrap_angle
from .variant import ControlInput, ModelVariant

_TOL = 1e-9


class IntegrationError(RuntimeError):
    pass


class RealTimeBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class FixedStep:
    dt: float = 0.1

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")


@dataclass(frozen=True)
class Adaptive:
    rel_tol: float = 1e-6
    abs_tol: float = 1e-9
    dt_min: float = 1e-6
    dt_max: float = 1.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if not 0 < self.dt_min <= self.dt_max:
            raise ValueError("need 0 < dt_min <= dt_max")


@dataclass(frozen=True)
class SimulationConfig:
    t_end: float
    mode: FixedStep | Adaptive = field(default_factory=FixedStep)
    sample_interval: float | None = None
    control_period: float = 1.0
    real_time_budget: bool = False
    record_forces: bool = True

    def __post_init__(self):
        if not self.t_end > 0:
            raise ValueError("t_end must be positive")
        if not self.control_period > 0:
            raise ValueError("control_period must be positive")
        if self.sample_interval is not None and not self.sample_interval > 0:
            raise ValueError("sample_interval must be positive")
        if isinstance(self.mode, FixedStep):
            for name, value in (("sample_interval", self.output_interval), ("control_period", self.control_period)):
                ratio = value / self.mode.dt
                if abs(ratio - round(ratio)) > 1e-6 or round(ratio) < 1:
                    raise ValueError(f"{name} must be a whole multiple of dt")

    @property
    def output_interval(self) -> float:
        if self.sample_interval is not None:
            return self.sample_interval
        return self.mode.dt if isinstance(self.mode, FixedStep) else 1.0


@dataclass
class Trajectory:
    t: np.ndarray
    states: np.ndarray
    commanded: np.ndarray
    realized: np.ndarray
    U_A: np.ndarray
    gamma_A: np.ndarray
    forces: dict[str, np.ndarray]
    step_sizes: np.ndarray
    rejected_steps: int = 0
    wall_time: float = 0.0
    model_name: str = ""

    STATE_NAMES = ("x0", "y0", "psi", "u", "v_m", "r")
    INPUT_NAMES = ("delta", "n_p", "n_bt", "n_st")

    def __len__(self) -> int:
        return len(self.t)

    def column(self, name: str) -> np.ndarray:
        if name == "t":
            return self.t
        if name in self.STATE_NAMES:
            return self.states[:, self.STATE_NAMES.index(name)]
        if name.endswith("_cmd") and name[:-4] in self.INPUT_NAMES:
            return self.commanded[:, self.INPUT_NAMES.index(name[:-4])]
        if name in self.INPUT_NAMES:
            return self.realized[:, self.INPUT_NAMES.index(name)]
        if name == "U_A":
            return self.U_A
        if name == "gamma_A":
            return self.gamma_A
        if name in self.forces:
            return self.forces[name]
        raise KeyError(name)

    def state_at(self, i: int) -> ShipState:
        return ShipState.from_array(self.states[i])

    @property
    def real_time_ratio(self) -> float:
        span = self.t[-1] - self.t[0]
        return self.wall_time / span if span > 0 else math.inf


def _is_finite(y) -> bool:
    # a single sum catches nan and inf in any component
    return math.isfinite(sum(y))


def rk4_step(f: Callable, y, t: float, h: float):
    """One classical Runge-Kutta step of ``dy/dt = f(t, y)``."""
    if not h > 0:
        raise ValueError("h must be positive")
    as_array = isinstance(y, np.ndarray)
    y = [float(v) for v in y] if as_array else y
    h2 = 0.5 * h
    k1 = f(t, y)
    k2 = f(t + h2, [a + h2 * b for a, b in zip(y, k1)])
    k3 = f(t + h2, [a + h2 * b for a, b in zip(y, k2)])
    k4 = f(t + h, [a + h * b for a, b in zip(y, k3)])
    h6 = h / 6.0
    out = [a + h6 * (b + 2.0 * (c + d) + e) for a, b, c, d, e in zip(y, k1, k2, k3, k4)]
    if not (_is_finite(out) and _is_finite(k1)):
        raise IntegrationError(f"model blew up at t={t!r}")
    return np.array(out) if as_array else out


# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = _A[6] + (0.0,)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)
_E = tuple(b5 - b4 for b5, b4 in zip(_B5, _B4))


@dataclass
class AdaptiveStats:
    steps: list = field(default_factory=list)
    rejected: int = 0
    h_next: float | None = None


def dp45_integrate(f: Callable, y, t0: float, t1: float, mode: Adaptive, stats: AdaptiveStats | None = None):
    """Integrate from ``t0`` to exactly ``t1`` with error control; returns the end state list.

    ``stats`` carries the proposed next step between calls and collects
    accepted step sizes and the rejection count.
    """
    stats = stats if stats is not None else AdaptiveStats()
    y = list(y)
    t = t0
    h = stats.h_next or min(mode.dt_max, max(mode.dt_min, 0.01 * (t1 - t0) or mode.dt_min))
    k1 = f(t, y)
    n = len(y)
    while t < t1 - _TOL * max(1.0, abs(t1)):
        h = min(h, mode.dt_max)
        last = t + h >= t1 - _TOL * max(1.0, abs(t1))
        h_try = t1 - t if last else h
        ks = [k1]
        for stage in range(1, 7):
            a = _A[stage]
            yi = [y[i] + h_try * sum(a[j] * ks[j][i] for j in range(stage)) for i in range(n)]
            ks.append(f(t + _C[stage] * h_try, yi))
        y_new = yi  # FSAL: the last stage point is the 5th-order solution
        err = 0.0
        for i in range(n):
            e = h_try * sum(_E[j] * ks[j][i] for j in range(7))
            scale = mode.abs_tol + mode.rel_tol * max(abs(y[i]), abs(y_new[i]))
            err = max(err, abs(e) / scale)
        if not (math.isfinite(err) and _is_finite(y_new)):
            err = math.inf
        if err <= 1.0:
            t = t1 if last else t + h_try
            y = y_new
            k1 = ks[6]
            stats.steps.append(h_try)
            factor = 5.0 if err == 0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
            if not last:
                h = h_try * factor
            else:
                # keep the unclipped proposal for the next interval
                h = max(h, h_try * factor) if h_try < h else h_try * factor
        else:
            stats.rejected += 1
            if h_try <= mode.dt_min * (1 + 1e-12):
                if not math.isfinite(err):
                    raise IntegrationError(f"model blew up at t={t!r}")
                raise IntegrationError(f"step-size underflow at t={t!r}")
            h = max(mode.dt_min, h_try * max(0.2, 0.9 * err ** -0.2) if math.isfinite(err) else h_try * 0.2)
    stats.h_next = max(mode.dt_min, min(mode.dt_max, h))
    return y


def adaptive_integrate(f: Callable, y0, config: SimulationConfig):
    """Autonomous-input driver returning ``(t, states, step_sizes)`` sampled at the output interval."""
    if not isinstance(config.mode, Adaptive):
        raise ValueError("adaptive_integrate needs an Adaptive mode")
    dt_out = config.output_interval
    n_out = int(round(config.t_end / dt_out))
    stats = AdaptiveStats()
    ts = [0.0]
    ys = [list(map(float, y0))]
    y = ys[0]
    for k in range(1, n_out + 1):
        t_prev = (k - 1) * dt_out
        t_next = min(config.t_end, k * dt_out)
        y = dp45_integrate(f, y, t_prev, t_next, config.mode, stats)
        ts.append(t_next)
        ys.append(list(y))
    return np.array(ts), np.array(ys), np.array(stats.steps)


Controller = Callable[[float, ShipState], ControlInput]


def constant_controller(control: ControlInput) -> Controller:
    return lambda t, state: control


def simulate(
    model: ModelVariant,
    controller: Controller,
    config: SimulationConfig,
    initial: ShipState | None = None,
    actuators: ActuatorLimits | ActuatorState | None = None,
    wind: TrueWind | WindConfig | WindProcess | None = None,
) -> Trajectory:
    """Run ``model`` in closed loop with ``controller``.

    The controller sees the current :class:`ShipState` every
    ``config.control_period`` seconds and its command is held in between.
    ``actuators`` defaults to pass-through (realized equals commanded).
    """
    initial = initial or ShipState()
    if actuators is None:
        actuators = ActuatorState(ActuatorLimits.passthrough())
    elif isinstance(actuators, ActuatorLimits):
        actuators = ActuatorState(actuators)
    if wind is None:
        wind_fn = lambda t: TrueWind()  # noqa: E731
    elif isinstance(wind, TrueWind):
        wind_fn = lambda t: wind  # noqa: E731
    else:
        process = wind if isinstance(wind, WindProcess) else WindProcess(wind)
        wind_fn = process.at

    mode = config.mode
    dt_out = config.output_interval
    fixed = isinstance(mode, FixedStep)
    step = mode.dt if fixed else dt_out
    n_steps = int(round(config.t_end / step))
    if abs(n_steps * step - config.t_end) > 1e-9 * max(1.0, config.t_end):
        raise ValueError("t_end must be a whole multiple of the step (fixed) or sample interval (adaptive)")
    stride = int(round(dt_out / step)) if fixed else 1
    control_every = config.control_period / step

    rec_t, rec_y, rec_cmd, rec_real, rec_wind = [], [], [], [], []
    rec_forces: dict[str, list] = {}
    stats = AdaptiveStats()
    y = [float(v) for v in initial.to_array()]
    command = None
    next_control = 0.0
    start = time.perf_counter()

    def record(t, y, cmd, real, w):
        rec_t.append(t)
        rec_y.append(tuple(y))
        rec_cmd.append(cmd.as_tuple())
        rec_real.append(real.as_tuple())
        U_A, gamma_A = apparent_wind_components(y[2], y[3], y[4], w.U_T, w.gamma_T)
        rec_wind.append((U_A, gamma_A))
        if config.record_forces:
            for key, value in model.forces(y, real, w).items():
                if key in ("U_A", "gamma_A"):
                    continue
                rec_forces.setdefault(key, []).append(value)

    fixed_step = getattr(model, "fixed_step", None)
    for k in range(n_steps):
        t = k * step
        if command is None or k >= next_control - 1e-9:
            command = controller(t, ShipState(*y))
            next_control += control_every
        real = actuators.step(command, step)
        w = wind_fn(t)
        if k % stride == 0:
            record(t, y, command, real, w)
        if fixed:
            if fixed_step is not None:
                y = fixed_step(y, step, real, w)
                if not _is_finite(y):
                    raise IntegrationError(f"model blew up at t={t!r}")
            else:
                y = rk4_step(model.rhs(real, w), y, t, step)
        else:
            y = dp45_integrate(model.rhs(real, w), y, t, t + step, mode, stats)
        y[2] = wrap_angle(y[2])
    t = n_steps * step
    # final sample: the held command and realized value at t_end
    record(t, y, command, actuators.realized_input(), wind_fn(t))
    wall = time.perf_counter() - start

    traj = Trajectory(
        t=np.array(rec_t),
        states=np.array(rec_y),
        commanded=np.array(rec_cmd),
        realized=np.array(rec_real),
        U_A=np.array([w[0] for w in rec_wind]),
        gamma_A=np.array([w[1] for w in rec_wind]),
        forces={k: np.array(v) for k, v in rec_forces.items()},
        step_sizes=np.full(n_steps, step) if fixed else np.array(stats.steps),
        rejected_steps=stats.rejected,
        wall_time=wall,
        model_name=model.name,
    )
    if config.real_time_budget and traj.real_time_ratio >= 1.0:
        raise RealTimeBudgetExceeded(f"real-time ratio {traj.real_time_ratio:.3f} >= 1")
    return traj

