"""Canonical maneuvers as controller factories.

Each maneuver is a frozen description; :meth:`controller` returns a fresh
callable ``(t, state) -> ControlInput`` that may keep its own state (the
zig-zag controller remembers which way it is steering).
"""

from __future__ import annotations

import bisect
import math
import random
from dataclasses import dataclass, field

from .actuators import ActuatorLimits
from .kinematics import ShipState, wrap_angle
from .variant import ControlInput


def _within(value: float, bound: float, what: str) -> None:
    if abs(value) > bound + 1e-12:
        raise ValueError(f"{what} {value!r} exceeds the actuator limit {bound!r}")


@dataclass(frozen=True)
class ConstantControl:
    control: ControlInput

    def __call__(self, t: float, state: ShipState) -> ControlInput:
        return self.control


@dataclass(frozen=True)
class Straight:
    n_p: float = 0.0
    delta: float = 0.0

    def check_limits(self, limits: ActuatorLimits) -> None:
        _within(self.delta, limits.delta_max, "rudder angle")
        _within(self.n_p, limits.n_max, "propeller revolutions")

    def controller(self):
        return ConstantControl(ControlInput(self.delta, self.n_p))


@dataclass(frozen=True)
class Turning:
    delta: float
    n_p: float = 0.0

    def check_limits(self, limits: ActuatorLimits) -> None:
        _within(self.delta, limits.delta_max, "rudder angle")
        _within(self.n_p, limits.n_max, "propeller revolutions")

    def controller(self):
        return ConstantControl(ControlInput(self.delta, self.n_p))


@dataclass(frozen=True)
class CrabbingManeuver:
    """Fixed thruster plan, optionally with rudder and propeller."""

    n_bt: float = 0.0
    n_st: float = 0.0
    delta: float = 0.0
    n_p: float = 0.0

    def check_limits(self, limits: ActuatorLimits) -> None:
        _within(self.delta, limits.delta_max, "rudder angle")
        _within(self.n_p, limits.n_max, "propeller revolutions")
        _within(self.n_bt, limits.thruster_max, "bow thruster revolutions")
        _within(self.n_st, limits.thruster_max, "stern thruster revolutions")

    def controller(self):
        return ConstantControl(ControlInput(self.delta, self.n_p, self.n_bt, self.n_st))


@dataclass(frozen=True)
class CrashAstern:
    """Propeller ahead until ``t_reverse``, then reversed; rudder amidships."""

    n_ahead: float
    n_reverse: float
    t_reverse: float = 0.0

    def __post_init__(self):
        if self.n_reverse >= 0:
            raise ValueError("n_reverse must be negative")
        if self.t_reverse < 0:
            raise ValueError("t_reverse must be non-negative")

    def check_limits(self, limits: ActuatorLimits) -> None:
        _within(self.n_ahead, limits.n_max, "propeller revolutions")
        _within(self.n_reverse, limits.n_max, "propeller revolutions")

    def controller(self):
        ahead = ControlInput(0.0, self.n_ahead)
        astern = ControlInput(0.0, self.n_reverse)
        t_rev = self.t_reverse
        return lambda t, state: astern if t >= t_rev - 1e-9 else ahead


class ZigZagController:
    """Bang-bang rudder on heading change from the initial heading.

    Starts with starboard rudder. The rudder flips when the heading change
    reaches ``+psi_switch`` (to port) or ``-psi_switch`` (to starboard).
    After a flip the opposite threshold is only armed once the heading has
    come back inside the band by ``hysteresis``, which keeps measurement
    jitter at a threshold from causing repeated flips.
    """

    def __init__(self, delta: float, psi_switch: float, n_p: float, hysteresis: float):
        self.delta = delta
        self.psi_switch = psi_switch
        self.n_p = n_p
        self.hysteresis = hysteresis
        self.side = 1
        self.armed = True
        self.psi0: float | None = None
        self.last_psi = 0.0
        self.change = 0.0
        self.switch_times: list[float] = []

    def __call__(self, t: float, state: ShipState) -> ControlInput:
        if self.psi0 is None:
            self.psi0 = self.last_psi = state.psi
        self.change += wrap_angle(state.psi - self.last_psi)
        self.last_psi = state.psi
        dpsi = self.change
        if not self.armed and abs(dpsi) < self.psi_switch - self.hysteresis:
            self.armed = True
        if self.armed:
            if self.side > 0 and dpsi >= self.psi_switch:
                self._flip(t)
            elif self.side < 0 and dpsi <= -self.psi_switch:
                self._flip(t)
        return ControlInput(self.side * self.delta, self.n_p)

    def _flip(self, t: float) -> None:
        self.side = -self.side
        self.armed = False
        self.switch_times.append(t)


@dataclass(frozen=True)
class ZigZag:
    delta: float
    psi_switch: float
    n_p: float = 0.0
    hysteresis: float = math.radians(0.1)

    def __post_init__(self):
        if not (self.delta > 0 and self.psi_switch > 0):
            raise ValueError("zig-zag rudder angle and switching heading must be positive")
        if not 0 <= self.hysteresis < self.psi_switch:
            raise ValueError("hysteresis must be non-negative and below the switching heading")

    def check_limits(self, limits: ActuatorLimits) -> None:
        _within(self.delta, limits.delta_max, "rudder angle")
        _within(self.n_p, limits.n_max, "propeller revolutions")

    def controller(self) -> ZigZagController:
        return ZigZagController(self.delta, self.psi_switch, self.n_p, self.hysteresis)


@dataclass(frozen=True)
class InputSchedule:
    """Piecewise-constant rudder and propeller commands starting at ``times[i]``."""

    times: tuple[float, ...]
    delta: tuple[float, ...]
    n_p: tuple[float, ...]

    def __post_init__(self):
        if not (len(self.times) == len(self.delta) == len(self.n_p)) or not self.times:
            raise ValueError("schedule columns must be non-empty and equally long")

    def at(self, t: float) -> ControlInput:
        i = max(0, bisect.bisect_right(self.times, t + 1e-9) - 1)
        return ControlInput(self.delta[i], self.n_p[i])

    def __call__(self, t: float, state: ShipState) -> ControlInput:
        return self.at(t)


def random_maneuver(
    seed: int,
    t_end: float,
    hold_min: float,
    hold_max: float,
    delta_max: float,
    n_min: float,
    n_max: float,
) -> InputSchedule:
    """Uniform hold times in ``[hold_min, hold_max]`` and uniform amplitudes.

    Rudder angles are drawn from ``[-delta_max, delta_max]`` and propeller
    revolutions from ``[n_min, n_max]``. The same seed gives the same schedule.
    """
    if not 0 < hold_min <= hold_max:
        raise ValueError("hold times need 0 < hold_min <= hold_max")
    if delta_max < 0 or n_min > n_max:
        raise ValueError("amplitude bounds are inverted")
    rng = random.Random(seed)
    times, deltas, revs = [], [], []
    t = 0.0
    while t < t_end or not times:
        times.append(t)
        deltas.append(rng.uniform(-delta_max, delta_max))
        revs.append(rng.uniform(n_min, n_max))
        t += rng.uniform(hold_min, hold_max)
    return InputSchedule(tuple(times), tuple(deltas), tuple(revs))


@dataclass(frozen=True)
class RandomManeuver:
    seed: int
    t_end: float
    hold_min: float
    hold_max: float
    delta_max: float
    n_min: float
    n_max: float
    schedule: InputSchedule = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "schedule",
            random_maneuver(self.seed, self.t_end, self.hold_min, self.hold_max, self.delta_max, self.n_min, self.n_max),
        )

    def check_limits(self, limits: ActuatorLimits) -> None:
        _within(self.delta_max, limits.delta_max, "rudder amplitude bound")
        _within(self.n_min, limits.n_max, "propeller lower bound")
        _within(self.n_max, limits.n_max, "propeller upper bound")

    def controller(self) -> InputSchedule:
        return self.schedule
