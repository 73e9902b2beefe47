"""Running scenarios: simulation, maneuver summaries and CSV export."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .actuators import ActuatorState, WindProcess
from .config import Scenario
from .integrate import Trajectory, simulate
from .maneuvers import CrashAstern, Turning, ZigZag, ZigZagController
from .mmg import COMPONENTS

CSV_COLUMNS = (
    "t", "x0", "y0", "psi", "u", "v_m", "r", "delta_cmd", "delta", "n_cmd", "n_p",
    "U_A", "gamma_A", "X_total", "Y_total", "N_total",
)
MMG_FORCE_COLUMNS = tuple(f"{axis}_{part}" for part in COMPONENTS for axis in "XYN")


@dataclass
class RunResult:
    scenario: Scenario
    trajectory: Trajectory
    summary: dict


def csv_columns(model_name: str) -> tuple[str, ...]:
    return CSV_COLUMNS + (MMG_FORCE_COLUMNS if model_name == "mmg" else ())


def write_csv(traj: Trajectory, path: str | Path) -> Path:
    """Write the trajectory with shortest round-trip float formatting."""
    names = csv_columns(traj.model_name)
    lookup = {"n_cmd": "n_p_cmd"}
    cols = [traj.column(lookup.get(n, n)).tolist() for n in names]
    path = Path(path)
    with open(path, "w", newline="") as fh:
        fh.write(",".join(names) + "\n")
        for row in zip(*cols):
            fh.write(",".join(map(repr, row)) + "\n")
    return path


def heading_change(traj: Trajectory) -> np.ndarray:
    """Unwrapped heading relative to the first sample (rad)."""
    psi = np.unwrap(traj.column("psi"))
    return psi - psi[0]


def zigzag_summary(traj: Trajectory, psi_switch: float, switch_times) -> dict:
    """Overshoot angles (deg) after each rudder flip."""
    t = traj.t
    dpsi = heading_change(traj)
    overshoots = []
    bounds = list(switch_times) + [math.inf]
    for i, t_switch in enumerate(switch_times):
        window = (t >= t_switch) & (t < bounds[i + 1])
        if not window.any():
            break
        # flips alternate: first at +psi_switch, second at -psi_switch, ...
        extreme = dpsi[window].max() if i % 2 == 0 else -dpsi[window].min()
        overshoots.append(math.degrees(extreme - psi_switch))
    out = {"switch_times_s": [float(s) for s in switch_times], "overshoots_deg": overshoots}
    if overshoots:
        out["first_overshoot_deg"] = overshoots[0]
    if len(overshoots) > 1:
        out["second_overshoot_deg"] = overshoots[1]
    return out


def _at_heading(traj: Trajectory, target: float):
    """Earth-frame displacement along/across the initial heading when |dpsi| first reaches ``target``."""
    dpsi = np.abs(heading_change(traj))
    idx = np.nonzero(dpsi >= target)[0]
    if len(idx) == 0:
        return None
    k = int(idx[0])
    if k == 0:
        w = 0.0
    else:
        w = (target - dpsi[k - 1]) / (dpsi[k] - dpsi[k - 1])
    xy = traj.states[:, :2]
    p = xy[k - 1] + w * (xy[k] - xy[k - 1]) if k > 0 else xy[0]
    d = p - xy[0]
    psi0 = traj.states[0, 2]
    along = d[0] * math.cos(psi0) + d[1] * math.sin(psi0)
    across = -d[0] * math.sin(psi0) + d[1] * math.cos(psi0)
    return along, across


def turning_summary(traj: Trajectory) -> dict:
    """Advance and transfer at 90 deg heading change, tactical diameter at 180 deg (m)."""
    out = {}
    at90 = _at_heading(traj, math.pi / 2)
    if at90 is not None:
        out["advance_m"], transfer = at90
        out["transfer_m"] = abs(transfer)
    at180 = _at_heading(traj, math.pi)
    if at180 is not None:
        out["tactical_diameter_m"] = abs(at180[1])
    out["final_turn_rate_deg_s"] = math.degrees(float(traj.column("r")[-1]))
    return out


def crash_astern_summary(traj: Trajectory, t_reverse: float) -> dict:
    """Head reach and lateral deviation from the reversal order until the ship stops."""
    t = traj.t
    u = traj.column("u")
    start = int(np.searchsorted(t, t_reverse - 1e-9))
    stopped = np.nonzero((t >= t_reverse - 1e-9) & (u <= 0.0))[0]
    out = {}
    if len(stopped):
        k = int(stopped[0])
        w = 0.0 if k == start else u[k - 1] / (u[k - 1] - u[k])
        xy = traj.states[:, :2]
        p = xy[k - 1] + w * (xy[k] - xy[k - 1]) if k > start else xy[k]
        d = p - xy[start]
        psi0 = traj.states[start, 2]
        out["time_to_stop_s"] = float(t[k - 1] + w * (t[k] - t[k - 1]) - t_reverse) if k > start else 0.0
        out["stopping_distance_m"] = float(d[0] * math.cos(psi0) + d[1] * math.sin(psi0))
        out["lateral_deviation_m"] = float(-d[0] * math.sin(psi0) + d[1] * math.cos(psi0))
    else:
        out["time_to_stop_s"] = math.nan
    dpsi = heading_change(traj)
    out["heading_change_deg"] = math.degrees(float(dpsi[-1] - dpsi[start]))
    return out


def motion_summary(traj: Trajectory) -> dict:
    d = traj.states[-1, :2] - traj.states[0, :2]
    tail = traj.t >= traj.t[0] + 0.75 * (traj.t[-1] - traj.t[0])
    return {
        "final_speed_m_s": float(math.hypot(traj.states[-1, 3], traj.states[-1, 4])),
        "displacement_north_m": float(d[0]),
        "displacement_east_m": float(d[1]),
        "heading_change_deg": math.degrees(float(heading_change(traj)[-1])),
        "mean_sway_late_m_s": float(np.mean(traj.column("v_m")[tail])),
    }


def run_scenario(scenario: Scenario) -> RunResult:
    model = scenario.build_model()
    maneuver = scenario.maneuver
    controller = maneuver.controller()
    traj = simulate(
        model,
        controller,
        scenario.simulation,
        scenario.initial,
        ActuatorState(scenario.actuators),
        WindProcess(scenario.wind),
    )
    summary = {"model": model.name, "samples": len(traj), "real_time_ratio": traj.real_time_ratio}
    summary.update(motion_summary(traj))
    if isinstance(maneuver, ZigZag) and isinstance(controller, ZigZagController):
        summary.update(zigzag_summary(traj, maneuver.psi_switch, controller.switch_times))
    elif isinstance(maneuver, Turning):
        summary.update(turning_summary(traj))
    elif isinstance(maneuver, CrashAstern):
        summary.update(crash_astern_summary(traj, maneuver.t_reverse))
    return RunResult(scenario, traj, summary)


def format_summary(summary: dict) -> str:
    lines = []
    for key, value in summary.items():
        if isinstance(value, float):
            value = f"{value:.6g}"
        elif isinstance(value, list):
            value = "[" + ", ".join(f"{v:.6g}" for v in value) + "]"
        lines.append(f"{key}: {value}")
    return "\n".join(lines)
