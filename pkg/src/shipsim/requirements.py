"""Executable functional-requirement probes for berthing-capable simulators.

Each probe drives the MMG model through a short scripted run and turns a
qualitative requirement into a measured number and a threshold. Probe
failures are report entries, never exceptions.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .actuators import ActuatorLimits, ActuatorState
from .integrate import Adaptive, FixedStep, IntegrationError, SimulationConfig, Trajectory, simulate
from .kinematics import ShipState, TrueWind
from .maneuvers import ConstantControl, InputSchedule, random_maneuver
from .mmg import MmgModel, MmgParameters, wind_coefficients
from .variant import ControlInput, NEUTRAL

REQUIREMENTS = (
    ("origin_stability", "Without inputs or disturbances the origin (u, v, r) = 0 is asymptotically stable"),
    ("hydrodynamic_resistance", "Hydrodynamic resistance acts against surge, sway and yaw velocity"),
    ("stability_depends_on_hull_and_speed", "The model is stable or unstable depending on hull form and speed"),
    ("no_improbable_motion", "Theoretically or physically improbable motion does not occur"),
    ("rudder_turning", "Turning motion follows the rudder angle"),
    ("speed_follows_rpm", "Ship speed varies appropriately with propeller revolutions"),
    ("steering_response_varies", "The steering response varies with speed and propeller revolutions"),
    ("thruster_response_varies", "The side-thruster response varies with forward speed"),
    ("propeller_reversal_turn", "Reversing the propeller turns the ship according to its direction of rotation"),
    ("wind_leeward_drift", "Under wind the ship drifts to leeward and/or turns"),
    ("actuator_delay", "The delay between command and actuator is modelled"),
    ("actuator_limits", "Actuator maximum values and rates are respected"),
    ("automatic_step_size", "Integration steps are chosen automatically"),
    ("real_time", "Each step is computed faster than real time"),
)

NOT_APPLICABLE = {
    "wave_disturbance": "not applicable: no wave model is included, so wave drift is not probed",
}


@dataclass(frozen=True)
class RequirementResult:
    name: str
    title: str
    passed: bool
    measured: float
    threshold: str
    detail: str = ""

    def __post_init__(self):
        # probes compute with numpy; keep the report JSON-serializable
        object.__setattr__(self, "passed", bool(self.passed))
        object.__setattr__(self, "measured", float(self.measured))

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: measured={self.measured:.6g} threshold {self.threshold}" + (
            f" ({self.detail})" if self.detail else ""
        )


@dataclass
class RequirementReport:
    items: list[RequirementResult]
    notes: dict = field(default_factory=lambda: dict(NOT_APPLICABLE))

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    @property
    def pass_count(self) -> int:
        return sum(item.passed for item in self.items)

    def __getitem__(self, name: str) -> RequirementResult:
        for item in self.items:
            if item.name == name:
                return item
        raise KeyError(name)

    def format(self) -> str:
        lines = [item.line() for item in self.items]
        lines += [f"[N/A ] {key}: {text}" for key, text in self.notes.items()]
        lines.append(f"{self.pass_count}/{len(self.items)} requirements pass")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "items": [
                {"name": i.name, "title": i.title, "passed": i.passed, "measured": i.measured,
                 "threshold": i.threshold, "detail": i.detail}
                for i in self.items
            ],
            "notes": dict(self.notes),
        }


@dataclass(frozen=True)
class ProbeSettings:
    dt: float = 0.1
    origin_duration: float = 600.0
    origin_energy_ratio: float = 0.5
    settle_duration: float = 1500.0
    turn_duration: float = 60.0
    reversal_duration: float = 900.0
    wind_speed: float = 15.0
    wind_duration: float = 600.0
    probe_dead_time: float = 2.0
    real_time_duration: float = 3600.0


def kinetic_energy(states: np.ndarray, params: MmgParameters) -> np.ndarray:
    """Kinetic energy including added mass and the sway/yaw coupling term (J)."""
    m = params.mass
    u, v, r = states[:, 3], states[:, 4], states[:, 5]
    return 0.5 * (m.m + m.m_x) * u**2 + 0.5 * (m.m + m.m_y) * v**2 + 0.5 * m.yaw_inertia * r**2 + m.coupling * v * r


def speed_bound(params: MmgParameters, limits: ActuatorLimits, wind_speed: float = 0.0) -> float:
    """Upper bound on speed from the largest available force against the weakest resistance.

    The force cap sums the stalled main propeller, both side thrusters and
    the wind load with every coefficient at its largest magnitude; the
    resistance floor is the smaller of the ahead and astern coefficients.
    The factor 2 leaves room for these simplifications.
    """
    g, prop = params.geometry, params.propeller
    n = limits.n_max if math.isfinite(limits.n_max) else 20.0
    K_T = max(abs(prop.k0), abs(prop.C3), abs(prop.C6) + abs(prop.C7))
    force = g.rho * n * n * prop.D_p**4 * K_T
    n_t = limits.thruster_max if math.isfinite(limits.thruster_max) else 20.0
    for unit in (params.thrusters.bow, params.thrusters.stern):
        if unit is not None:
            force += g.rho * n_t * n_t * unit.D**4 * abs(unit.K_T)
    w = params.wind
    c_wind = sum(abs(c) for c in (w.X0, w.X1, w.X3, w.X5, w.Y1, w.Y3, w.Y5))
    force += 0.5 * g.rho_A * wind_speed**2 * max(g.A_T, g.A_L) * c_wind
    resist = 0.5 * g.rho * g.L_pp * g.d * min(abs(params.hull.X_0F), abs(params.hull.X_0A))
    return 2.0 * math.sqrt(force / resist)


class _Prober:
    def __init__(self, params: MmgParameters, limits: ActuatorLimits, settings: ProbeSettings):
        self.params = params
        self.limits = limits
        self.s = settings
        self.model = MmgModel(params)
        self.trajectories: list[Trajectory] = []
        self.blowups: list[str] = []
        self._steady: dict[float, float] = {}

    def run(self, controller, t_end, initial=None, limits=None, wind=None, sample=1.0, forces=False, mode=None,
            start=NEUTRAL):
        """Simulate the probe ship; ``start`` is the actuator position at t = 0."""
        config = SimulationConfig(
            t_end, mode or FixedStep(self.s.dt), sample_interval=sample,
            control_period=self.s.dt if mode is None else sample, record_forces=forces,
        )
        try:
            traj = simulate(self.model, controller, config, initial or ShipState(),
                            ActuatorState(limits or ActuatorLimits.passthrough(), start), wind)
        except IntegrationError as exc:
            self.blowups.append(str(exc))
            raise
        self.trajectories.append(traj)
        return traj

    @property
    def n_ref(self) -> float:
        """Reference propeller revolutions: 60 % of the limit."""
        return 0.6 * min(self.limits.n_max, 10.0)

    def steady_speed(self, n: float) -> float:
        if n not in self._steady:
            traj = self.run(ConstantControl(ControlInput(0.0, n)), self.s.settle_duration, sample=10.0)
            self._steady[n] = float(traj.states[-1, 3])
        return self._steady[n]

    def yaw_rate_after(self, delta: float, n: float, duration: float) -> float:
        u0 = self.steady_speed(n)
        traj = self.run(ConstantControl(ControlInput(delta, n)), duration, ShipState(u=u0), self.limits,
                        start=ControlInput(0.0, n))
        return float(traj.states[-1, 5])


def _origin_stability(p: _Prober) -> RequirementResult:
    traj = p.run(ConstantControl(NEUTRAL), p.s.origin_duration, ShipState(u=0.1, v_m=0.05, r=0.01))
    ke = kinetic_energy(traj.states, p.params)
    rising = float(np.max(np.diff(ke))) / ke[0]
    ratio = float(ke[-1] / ke[0])
    ok = rising <= 1e-9 and ratio < p.s.origin_energy_ratio
    norm = np.linalg.norm(traj.states[:, 3:6], axis=1)
    return RequirementResult(
        "origin_stability", REQUIREMENTS[0][1], ok, ratio,
        f"< {p.s.origin_energy_ratio} with energy non-increasing",
        f"kinetic energy ratio after {p.s.origin_duration:g} s from (0.1, 0.05, 0.01); "
        f"largest relative rise {rising:.3g}; velocity norm ratio {norm[-1] / norm[0]:.3g}",
    )


def _resistance(p: _Prober) -> RequirementResult:
    starts = {"surge": (3, 0.5), "sway": (4, 0.3), "yaw": (5, 0.01)}
    ratios, opposing = {}, {}
    for axis, (idx, value) in starts.items():
        y0 = [0.0] * 6
        y0[idx] = value
        forces = p.model.forces(y0, NEUTRAL)
        key = {"surge": "X_H", "sway": "Y_H", "yaw": "N_H"}[axis]
        opposing[axis] = forces[key] * value < 0
        traj = p.run(ConstantControl(NEUTRAL), 120.0, ShipState.from_array(y0))
        ratios[axis] = abs(traj.states[-1, idx]) / value
    worst = max(ratios.values())
    ok = all(opposing.values()) and worst < 1.0
    return RequirementResult(
        "hydrodynamic_resistance", REQUIREMENTS[1][1], ok, worst,
        "< 1 on every axis with hull force opposing motion",
        "final/initial speed after 120 s: " + ", ".join(f"{a} {r:.3g}" for a, r in ratios.items())
        + "; opposing: " + ", ".join(f"{a} {o}" for a, o in opposing.items()),
    )


def sway_yaw_margin(model: MmgModel, u: float, n: float, L: float) -> float:
    """Largest real part of the frozen-speed sway/yaw Jacobian, scaled by ``L/u``."""
    y = [0.0, 0.0, 0.0, u, 0.0, 0.0]
    c = ControlInput(0.0, n)
    J = np.zeros((2, 2))
    h = 1e-6
    for j, idx in enumerate((4, 5)):
        yp, ym = list(y), list(y)
        yp[idx] += h
        ym[idx] -= h
        fp, fm = model.derivative(yp, c), model.derivative(ym, c)
        J[:, j] = [(fp[4] - fm[4]) / (2 * h), (fp[5] - fm[5]) / (2 * h)]
    return float(np.max(np.linalg.eigvals(J).real)) * L / u


def _stability_variation(p: _Prober) -> RequirementResult:
    n = p.n_ref
    u_fast = p.steady_speed(n)
    u_slow = 0.4 * u_fast
    L = p.params.geometry.L_pp
    variant = MmgModel(replace(p.params, hull=replace(p.params.hull, N_r=0.5 * p.params.hull.N_r)))
    margins = {
        "own hull, service speed": sway_yaw_margin(p.model, u_fast, n, L),
        "own hull, slow": sway_yaw_margin(p.model, u_slow, n, L),
        "half yaw damping, service speed": sway_yaw_margin(variant, u_fast, n, L),
        "half yaw damping, slow": sway_yaw_margin(variant, u_slow, n, L),
    }
    values = list(margins.values())
    both_signs = min(values) < 0 < max(values)
    a, b = values[0], values[1]
    speed_change = abs(a - b) / max(abs(a), abs(b))
    ok = both_signs and speed_change > 0.1
    return RequirementResult(
        "stability_depends_on_hull_and_speed", REQUIREMENTS[2][1], ok, speed_change,
        "> 0.1 relative change with speed, and both stable and unstable cases",
        "non-dimensional sway/yaw eigenvalue: " + ", ".join(f"{k} {v:.3g}" for k, v in margins.items()),
    )


def _improbable_motion(p: _Prober) -> RequirementResult:
    sched = random_maneuver(7, 600.0, 5.0, 30.0, p.limits.delta_max, -p.limits.n_max, p.limits.n_max)
    try:
        p.run(sched, 600.0, limits=p.limits, wind=TrueWind(p.s.wind_speed, math.radians(45.0)))
    except IntegrationError:
        pass  # counted in p.blowups
    failed = "; ".join(p.blowups)
    cap = speed_bound(p.params, p.limits, p.s.wind_speed)
    worst = 0.0
    finite = not failed
    for traj in p.trajectories:
        if not np.all(np.isfinite(traj.states)):
            finite = False
            continue
        worst = max(worst, float(np.max(np.hypot(traj.states[:, 3], traj.states[:, 4]))) / cap)
    ok = finite and worst < 1.0
    detail = f"peak speed over the speed bound {cap:.3g} m/s across {len(p.trajectories)} probe runs"
    if failed:
        detail += f"; {len(p.blowups)} runs diverged: {failed}"
    elif not finite:
        detail += "; non-finite state encountered"
    return RequirementResult("no_improbable_motion", REQUIREMENTS[3][1], ok, worst, "< 1 and all states finite", detail)


def _rudder_turning(p: _Prober) -> RequirementResult:
    n = p.n_ref
    d = math.radians(20.0)
    r_pos = p.yaw_rate_after(d, n, p.s.turn_duration)
    r_neg = p.yaw_rate_after(-d, n, p.s.turn_duration)
    r_half = p.yaw_rate_after(d / 2, n, p.s.turn_duration)
    ok = r_pos > 0 > r_neg and abs(r_pos) > abs(r_half) > 0
    return RequirementResult(
        "rudder_turning", REQUIREMENTS[4][1], ok, math.degrees(r_pos),
        "starboard rudder gives r > 0, port gives r < 0, larger angle turns faster",
        f"r after {p.s.turn_duration:g} s in deg/s: +20 deg {math.degrees(r_pos):.3g}, "
        f"-20 deg {math.degrees(r_neg):.3g}, +10 deg {math.degrees(r_half):.3g}",
    )


def _speed_rpm(p: _Prober) -> RequirementResult:
    revs = [f * p.n_ref for f in (1 / 3, 2 / 3, 1.0)]
    speeds = [p.steady_speed(n) for n in revs]
    steps = np.diff(speeds)
    ok = bool(np.all(steps > 0)) and speeds[0] > 0
    return RequirementResult(
        "speed_follows_rpm", REQUIREMENTS[5][1], ok, float(np.min(steps)),
        "> 0 (steady speeds strictly increasing)",
        "steady speeds: " + ", ".join(f"{n:.3g} rps -> {u:.4g} m/s" for n, u in zip(revs, speeds)),
    )


def _steering_variation(p: _Prober) -> RequirementResult:
    d = math.radians(10.0)
    slow, fast = p.n_ref / 2, p.n_ref
    g_slow = p.yaw_rate_after(d, slow, p.s.turn_duration) / d
    g_fast = p.yaw_rate_after(d, fast, p.s.turn_duration) / d
    change = abs(g_fast - g_slow) / max(abs(g_fast), abs(g_slow))
    return RequirementResult(
        "steering_response_varies", REQUIREMENTS[6][1], change > 0.1, change,
        "> 0.1 relative change of turn-rate gain",
        f"r/delta after {p.s.turn_duration:g} s: {slow:.3g} rps ({p.steady_speed(slow):.3g} m/s) {g_slow:.4g} 1/s, "
        f"{fast:.3g} rps ({p.steady_speed(fast):.3g} m/s) {g_fast:.4g} 1/s",
    )


def _thruster_variation(p: _Prober) -> RequirementResult:
    th = p.params.thrusters
    if th.bow is None and th.stern is None:
        return RequirementResult("thruster_response_varies", REQUIREMENTS[7][1], False, math.nan,
                                 "thrusters configured", "ship has no side thrusters")
    n_t = min(p.limits.thruster_max, 10.0)
    control = ControlInput(0.0, p.n_ref, n_t if th.bow else 0.0, -n_t if th.stern else 0.0)
    base = ControlInput(0.0, p.n_ref)

    def yaw_accel(u):
        y = [0.0, 0.0, 0.0, u, 0.0, 0.0]
        return p.model.derivative(y, control)[5] - p.model.derivative(y, base)[5]

    at_rest = yaw_accel(0.0)
    at_speed = yaw_accel(p.steady_speed(p.n_ref))
    ratio = abs(at_speed) / abs(at_rest) if at_rest else math.inf
    ok = at_rest != 0 and at_rest * at_speed >= 0 and ratio < 1.0
    return RequirementResult(
        "thruster_response_varies", REQUIREMENTS[7][1], ok, ratio,
        "< 1 (yaw effect at service speed over effect at rest)",
        f"thruster yaw acceleration: at rest {at_rest:.4g} rad/s^2, at speed {at_speed:.4g} rad/s^2",
    )


def _propeller_reversal(p: _Prober) -> RequirementResult:
    n = p.n_ref
    u0 = p.steady_speed(n)
    traj = p.run(ConstantControl(ControlInput(0.0, -n)), p.s.reversal_duration, ShipState(u=u0), p.limits,
                 forces=True, start=ControlInput(0.0, n))
    u = traj.column("u")
    stop = np.nonzero(u <= 0.0)[0]
    if len(stop) == 0:
        return RequirementResult("propeller_reversal_turn", REQUIREMENTS[8][1], False, math.inf,
                                 "u crosses zero", f"ship still moving ahead after {p.s.reversal_duration:g} s")
    k = int(stop[0])
    window = slice(0, k + 1)
    moment = float(np.mean(traj.column("N_p")[window]))
    yaw = float(np.mean(traj.column("r")[window]))
    ok = moment != 0 and np.sign(yaw) == np.sign(moment)
    return RequirementResult(
        "propeller_reversal_turn", REQUIREMENTS[8][1], ok, float(traj.t[k]),
        "finite stopping time with yaw sign equal to propeller moment sign",
        f"stopped after {traj.t[k]:.4g} s; mean r {math.degrees(yaw):.3g} deg/s; mean propeller moment {moment:.4g} N m",
    )


def _leeward_drift(p: _Prober) -> RequirementResult:
    wind = TrueWind(p.s.wind_speed, math.pi / 2)
    traj = p.run(ConstantControl(NEUTRAL), p.s.wind_duration, wind=wind)
    C_Y = wind_coefficients(math.pi / 2, p.params.wind)[1]
    cross = traj.column("y0")  # initial heading is north, so east is the cross-track axis
    after = cross[traj.t >= 60.0]
    growth = np.diff(np.abs(after))
    monotone = bool(np.all(growth >= -1e-9))
    ok = C_Y != 0 and np.sign(cross[-1]) == np.sign(C_Y) and monotone
    return RequirementResult(
        "wind_leeward_drift", REQUIREMENTS[9][1], ok, float(cross[-1]),
        "sign equals side-force coefficient sign at beam wind; |drift| non-decreasing after 60 s",
        f"beam wind {p.s.wind_speed:g} m/s from starboard; side-force coefficient {C_Y:.3g}; "
        f"heading change {math.degrees(np.unwrap(traj.column('psi'))[-1]):.3g} deg",
    )


def measured_delay(command: np.ndarray, realized: np.ndarray, dt: float, max_lag: float) -> float:
    """Lag (s) maximizing the cross-correlation of the mean-removed channels."""
    a = command - command.mean()
    b = realized - realized.mean()
    best, best_lag = -math.inf, 0
    for lag in range(int(round(max_lag / dt)) + 1):
        c = float(np.dot(a[: len(a) - lag], b[lag:])) / (len(a) - lag)
        if c > best + 1e-15:
            best, best_lag = c, lag
    return best_lag * dt


def _actuator_delay(p: _Prober) -> RequirementResult:
    configured = p.limits.dead_time
    dead = configured if configured > 0 else p.s.probe_dead_time
    sched = random_maneuver(11, 300.0, 3.0, 10.0, math.radians(10.0), p.n_ref, p.n_ref)
    traj = p.run(sched, 300.0, ShipState(u=1.0), ActuatorLimits.passthrough(dead), sample=p.s.dt)
    lag = measured_delay(traj.column("delta_cmd"), traj.column("delta"), p.s.dt, dead + 10.0)
    ok = abs(lag - dead) <= p.s.dt + 1e-9
    source = "configured" if configured > 0 else "probe value; ship has none configured"
    return RequirementResult(
        "actuator_delay", REQUIREMENTS[10][1], ok, lag,
        f"within {p.s.dt:g} s of the dead time {dead:g} s ({source})",
        "cross-correlation of commanded and realized rudder angle",
    )


def _actuator_limits(p: _Prober) -> RequirementResult:
    lim = p.limits
    big_d = 1.5 * lim.delta_max if math.isfinite(lim.delta_max) else 1.0
    big_n = 1.5 * lim.n_max if math.isfinite(lim.n_max) else 10.0
    sched = InputSchedule((0.0, 60.0, 120.0), (big_d, -big_d, big_d), (big_n, -big_n, big_n))
    traj = p.run(sched, 180.0, limits=lim, sample=p.s.dt)
    dt = p.s.dt
    worst = 0.0
    parts = []
    for name, mag, rate in (("delta", lim.delta_max, lim.delta_rate_max), ("n_p", lim.n_max, lim.n_rate_max)):
        x = traj.column(name)
        peak = float(np.max(np.abs(x)))
        slew = float(np.max(np.abs(np.diff(x)))) / dt
        over = max(peak / mag if math.isfinite(mag) else 0.0, slew / rate if math.isfinite(rate) else 0.0)
        worst = max(worst, over)
        parts.append(f"{name} peak {peak:.4g} (limit {mag:.4g}), rate {slew:.4g} (limit {rate:.4g})")
    reached = np.isclose(np.max(np.abs(traj.column("delta"))), lim.delta_max)
    ok = worst <= 1.0 + 1e-9 and bool(reached)
    return RequirementResult(
        "actuator_limits", REQUIREMENTS[11][1], ok, worst,
        "<= 1 (largest ratio of realized peak or rate to its limit), limit reached",
        "; ".join(parts),
    )


def _step_size(p: _Prober) -> RequirementResult:
    n = p.n_ref
    control = ConstantControl(ControlInput(math.radians(20.0), n))
    mode = Adaptive(rel_tol=1e-6, abs_tol=1e-9, dt_min=1e-6, dt_max=1.0)
    adaptive = p.run(control, 300.0, mode=mode, sample=1.0)
    reference = p.run(control, 300.0, sample=1.0, mode=FixedStep(0.02))
    steps = adaptive.step_sizes
    spread = float(steps.max() / steps.min())
    pos_err = float(np.max(np.abs(adaptive.states[:, :2] - reference.states[:, :2])))
    ok = spread >= 2.0 and pos_err < 0.1
    return RequirementResult(
        "automatic_step_size", REQUIREMENTS[12][1], ok, spread,
        ">= 2 (largest over smallest accepted step) with position error < 0.1 m",
        f"{len(steps)} accepted and {adaptive.rejected_steps} rejected steps; step sizes "
        f"{steps.min():.3g}..{steps.max():.3g} s; largest deviation from a fine fixed-step run {pos_err:.3g} m",
    )


def _real_time(p: _Prober) -> RequirementResult:
    # warm-up so one-off compilation or cache loading is not timed
    p.run(ConstantControl(ControlInput(0.0, p.n_ref)), 10.0)
    start = time.perf_counter()
    traj = p.run(ConstantControl(ControlInput(math.radians(5.0), p.n_ref)), p.s.real_time_duration, forces=True)
    wall = time.perf_counter() - start
    ratio = wall / traj.t[-1]
    return RequirementResult(
        "real_time", REQUIREMENTS[13][1], ratio < 1.0, ratio,
        "< 1 (wall time over simulated time)",
        f"{traj.t[-1]:g} s simulated at dt = {p.s.dt:g} s in {wall:.3g} s",
    )


_PROBES = (
    _origin_stability,
    _resistance,
    _stability_variation,
    None,  # improbable motion runs last, over every trajectory
    _rudder_turning,
    _speed_rpm,
    _steering_variation,
    _thruster_variation,
    _propeller_reversal,
    _leeward_drift,
    _actuator_delay,
    _actuator_limits,
    _step_size,
    _real_time,
)


def check_requirements(
    params: MmgParameters,
    limits: ActuatorLimits | None = None,
    settings: ProbeSettings = ProbeSettings(),
) -> RequirementReport:
    """Run one probe per requirement; a probe that raises is reported as failed."""
    prober = _Prober(params, limits or ActuatorLimits(), settings)
    results: dict[int, RequirementResult] = {}
    for i, probe in enumerate(_PROBES):
        if probe is None:
            continue
        results[i] = _guarded(probe, prober, i)
    results[3] = _guarded(_improbable_motion, prober, 3)
    return RequirementReport([results[i] for i in range(len(REQUIREMENTS))])


def _guarded(probe, prober: _Prober, index: int) -> RequirementResult:
    name, title = REQUIREMENTS[index]
    try:
        return probe(prober)
    except (IntegrationError, ValueError, ArithmeticError) as exc:
        return RequirementResult(name, title, False, math.nan, "probe completes", f"probe raised: {exc}")
