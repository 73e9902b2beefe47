# %% [markdown]
# # Fitting K and T, and an AR model, to simulated data
#
# A zig-zag run on the MMG ship is treated as a sea trial record. The
# first-order yaw model is fitted by least squares, then the yaw rate of
# a random-input run is described by an autoregressive model.

# %%
import math

import numpy as np

from shipsim.config import DATA_DIR, load_scenario
from shipsim.identification import KNOT, TimeSeries, fit_ar, fit_kt, training_length_metric
from shipsim.response import nondim_kt
from shipsim.scenario import run_scenario

SCENARIOS = DATA_DIR / "scenarios"

# %%
traj = run_scenario(load_scenario(SCENARIOS / "zigzag_10_10.toml")).trajectory
series = TimeSeries(float(traj.t[1] - traj.t[0]), traj.column("r"), traj.column("delta"))
fit = fit_kt(series)
print(f"K = {fit.model.K:.4f} 1/s, T = {fit.model.T:.1f} s, residual {fit.residual_rms:.2e} rad/s")

# %% [markdown]
# Non-dimensional values use the mean speed over the record and the ship
# length, which makes ships of different size comparable.

# %%
scenario = load_scenario(SCENARIOS / "zigzag_10_10.toml")
L = scenario.ship.geometry.L_pp
V = float(np.mean(np.hypot(traj.column("u"), traj.column("v_m"))))
K_, T_ = nondim_kt(fit.model, V, L)
print(f"K' = {K_:.3f}, T' = {T_:.3f}, record length {training_length_metric(traj.t[-1], V, L):.1f} ship lengths")

# %% [markdown]
# Noise makes the derivative estimate rough; smoothing the yaw rate
# before fitting recovers most of the accuracy.

# %%
rng = np.random.default_rng(1)
noisy = TimeSeries(series.dt, series.r + rng.normal(0.0, 0.05 * np.abs(series.r).max(), len(series)), series.delta)
for window in (1, 31, 61):
    m = fit_kt(noisy, smooth=window).model
    print(f"smoothing {window:3d}: K = {m.K:.4f}, T = {m.T:.1f}")

# %%
random_run = run_scenario(load_scenario(SCENARIOS / "random_training.toml")).trajectory
r = random_run.column("r")[::10]
ar = fit_ar(r - r.mean(), max_order=8)
print("AR order chosen by AIC:", ar.order)
print("coefficients:", np.round(ar.coefficients, 3))

# %% [markdown]
# A 7 knot ship of 325 m needs a record of about 1600 s to cover 17.7
# ship lengths of travel.

# %%
print(f"{training_length_metric(1597.6, 7 * KNOT, 325.0):.2f} ship lengths")
