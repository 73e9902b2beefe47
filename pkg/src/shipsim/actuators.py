"""Actuator dynamics between commanded and realized inputs, and the wind process.

Each channel runs the same chain: dead time, first-order lag, rate clamp,
magnitude clamp. Channels are rudder angle (rad), propeller revolutions and
the two side-thruster revolutions (rps).
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass

from .kinematics import TrueWind, wrap_2pi
from .variant import ControlInput

_TIME_TOL = 1e-9


@dataclass(frozen=True)
class ActuatorLimits:
    delta_max: float = math.radians(35.0)
    delta_rate_max: float = math.radians(5.0)
    n_max: float = 5.0
    n_rate_max: float = 0.5
    thruster_max: float = math.inf
    thruster_rate_max: float = math.inf
    dead_time: float = 0.0
    lag: float = 0.0

    def __post_init__(self):
        for name in ("delta_max", "delta_rate_max", "n_max", "n_rate_max", "thruster_max", "thruster_rate_max", "dead_time", "lag"):
            value = getattr(self, name)
            if math.isnan(value) or value < 0:
                raise ValueError(f"actuator limit {name} must be non-negative")
        if not self.delta_max > 0:
            raise ValueError("delta_max must be positive")

    @classmethod
    def passthrough(cls, dead_time: float = 0.0) -> "ActuatorLimits":
        """No rate or magnitude limits, no lag."""
        inf = math.inf
        return cls(inf, inf, inf, inf, inf, inf, dead_time, 0.0)

    def channel_limits(self) -> tuple[tuple[float, float], ...]:
        return (
            (self.delta_max, self.delta_rate_max),
            (self.n_max, self.n_rate_max),
            (self.thruster_max, self.thruster_rate_max),
            (self.thruster_max, self.thruster_rate_max),
        )


class ActuatorState:
    """Realized actuator values plus the command history that covers the dead time.

    Owned by one simulation loop. ``step`` advances the internal clock by ``dt``.
    The command issued at the start of a step reaches the lag stage
    ``dead_time`` seconds later; between buffered samples the delayed command
    is interpolated linearly.
    """

    def __init__(self, limits: ActuatorLimits, initial: ControlInput = ControlInput(), t0: float = 0.0):
        self.limits = limits
        self.t = float(t0)
        self._t0 = float(t0)
        self._initial = initial.as_tuple()
        self.realized = tuple(
            max(-mx, min(mx, v)) for v, (mx, _) in zip(self._initial, limits.channel_limits())
        )
        self._history: deque[tuple[float, tuple]] = deque()
        self._channels = limits.channel_limits()
        self._last = ControlInput(*self.realized)

    def realized_input(self) -> ControlInput:
        return self._last

    def _delayed(self, tau: float) -> tuple:
        hist = self._history
        if not hist or tau < hist[0][0] - _TIME_TOL:
            return self._initial
        # drop samples that can never be needed again
        while len(hist) > 1 and hist[1][0] <= tau + _TIME_TOL:
            hist.popleft()
        t_a, c_a = hist[0]
        if len(hist) == 1 or abs(tau - t_a) <= _TIME_TOL:
            return c_a
        t_b, c_b = hist[1]
        w = (tau - t_a) / (t_b - t_a)
        return tuple(a + w * (b - a) for a, b in zip(c_a, c_b))

    def step(self, command: ControlInput, dt: float) -> ControlInput:
        """Apply ``command`` issued now; return the value realized over the next ``dt``."""
        if not dt > 0:
            raise ValueError("dt must be positive")
        lim = self.limits
        if lim.dead_time > 0:
            if not self._history:
                # the initial value counts as issued one step earlier, so a
                # delay that is not a whole number of steps blends in early
                self._history.append((self.t - dt, self._initial))
            self._history.append((self.t, command.as_tuple()))
            target = self._delayed(self.t - lim.dead_time)
        else:
            target = command.as_tuple()
        self.t += dt
        if target == self.realized:
            # settled; skips the chain and keeps the same ControlInput object
            return self._last
        blend = 1.0 if lim.lag == 0 else -math.expm1(-dt / lim.lag)
        out = []
        for prev, goal, (mag, rate) in zip(self.realized, target, self._channels):
            want = prev + blend * (goal - prev)
            max_step = rate * dt
            want = min(prev + max_step, max(prev - max_step, want))
            out.append(min(mag, max(-mag, want)))
        self.realized = tuple(out)
        self._last = ControlInput(*out)
        return self._last


def actuator_step(command: ControlInput, state: ActuatorState, dt: float) -> tuple[ActuatorState, ControlInput]:
    """Functional wrapper: advance ``state`` in place and return it with the realized input."""
    realized = state.step(command, dt)
    return state, realized


@dataclass(frozen=True)
class WindConfig:
    """Steady true wind with optional seeded gusts.

    Gusts are uniform noise in ``[-1, 1]`` drawn every ``gust_period`` seconds
    and smoothed by a first-order filter with time constant ``gust_filter``;
    speed and direction get independent sequences scaled by
    ``gust_speed`` (m/s) and ``gust_direction`` (rad).
    """

    U_T: float = 0.0
    gamma_T: float = 0.0
    gusts: bool = False
    gust_speed: float = 0.0
    gust_direction: float = 0.0
    gust_period: float = 1.0
    gust_filter: float = 10.0
    seed: int = 0

    def __post_init__(self):
        if self.U_T < 0:
            raise ValueError("wind U_T must be non-negative")
        if self.gust_period <= 0 or self.gust_filter < 0:
            raise ValueError("gust_period must be positive and gust_filter non-negative")


class WindProcess:
    """Evaluates :class:`WindConfig` over time; gust samples are cached so lookups are repeatable."""

    def __init__(self, config: WindConfig):
        self.config = config
        self._rng = random.Random(config.seed)
        self._filtered = [(0.0, 0.0)]

    def _gust(self, k: int) -> tuple[float, float]:
        cfg = self.config
        a = 1.0 if cfg.gust_filter == 0 else -math.expm1(-cfg.gust_period / cfg.gust_filter)
        while len(self._filtered) <= k:
            s, d = self._filtered[-1]
            ns, nd = self._rng.uniform(-1, 1), self._rng.uniform(-1, 1)
            self._filtered.append((s + a * (ns - s), d + a * (nd - d)))
        return self._filtered[k]

    def at(self, t: float) -> TrueWind:
        cfg = self.config
        if not cfg.gusts:
            return TrueWind(cfg.U_T, cfg.gamma_T)
        gs, gd = self._gust(int(math.floor(t / cfg.gust_period + _TIME_TOL)))
        return TrueWind(max(0.0, cfg.U_T + cfg.gust_speed * gs), wrap_2pi(cfg.gamma_T + cfg.gust_direction * gd))


def wind_at(t: float, config: WindConfig | WindProcess) -> TrueWind:
    if t < 0:
        raise ValueError("t must be non-negative")
    process = config if isinstance(config, WindProcess) else WindProcess(config)
    return process.at(t)
