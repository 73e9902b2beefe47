# %% [markdown]
# # Standard maneuvers on the bundled ship
#
# Runs the bundled 10/10 zig-zag and 35 degree turning circle with the
# full MMG model, then repeats the zig-zag on the first-order yaw model.

# %%
import math

import numpy as np

from shipsim.config import DATA_DIR, load_scenario
from shipsim.scenario import format_summary, heading_change, run_scenario

SCENARIOS = DATA_DIR / "scenarios"

# %%
zigzag = run_scenario(load_scenario(SCENARIOS / "zigzag_10_10.toml"))
print(format_summary(zigzag.summary))

# %% [markdown]
# The overshoots grow slightly after the first flip because the ship has
# picked up yaw rate and lost some speed by then.

# %%
traj = zigzag.trajectory
dpsi = np.degrees(heading_change(traj))
for t in range(0, 201, 20):
    k = int(np.searchsorted(traj.t, t))
    print(f"t={traj.t[k]:5.0f} s  heading change {dpsi[k]:7.2f} deg  rudder {math.degrees(traj.column('delta')[k]):6.2f} deg")

# %%
turn = run_scenario(load_scenario(SCENARIOS / "turning_35.toml"))
print(format_summary(turn.summary))

# %% [markdown]
# The yaw-only model has no sway or speed loss, so its track differs,
# but its zig-zag overshoot lands close to the MMG one.

# %%
kt = run_scenario(load_scenario(SCENARIOS / "kt_zigzag.toml"))
print("MMG overshoots:", [round(x, 2) for x in zigzag.summary["overshoots_deg"][:4]])
print("KT  overshoots:", [round(x, 2) for x in kt.summary["overshoots_deg"][:4]])
