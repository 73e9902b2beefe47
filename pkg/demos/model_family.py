# %% [markdown]
# # One rudder step, every model
#
# Each model the bundled ship defines gets the same 10 degree rudder step
# at service revolutions. The response models only know yaw, so their
# positions come from integrating the constant forward speed.

# %%
import math

from shipsim import ControlInput, ShipState, SimulationConfig, simulate
from shipsim.config import load_ship
from shipsim.integrate import FixedStep
from shipsim.maneuvers import ConstantControl

ship = load_ship()
step = ConstantControl(ControlInput(math.radians(10.0), 3.0))
config = SimulationConfig(t_end=120.0, mode=FixedStep(0.1), sample_interval=1.0)

# %% [markdown]
# The Abkowitz expansion has no propeller input: its surge balance holds
# at the expansion speed, so that is where it starts. The others start at
# the steady speed the MMG ship reaches at 3 rps.

# %%
start_speed = {kind: 2.707 for kind in ship.available_models()}
start_speed["abkowitz"] = ship.abkowitz.U

for kind in ship.available_models():
    traj = simulate(ship.model(kind), step, config, ShipState(u=start_speed[kind]))
    r = traj.column("r")
    print(f"{kind:9s} r(30 s) {math.degrees(r[30]):6.3f} deg/s  r(120 s) {math.degrees(r[-1]):6.3f} deg/s  "
          f"u: {start_speed[kind]:.2f} -> {traj.column('u')[-1]:.2f} m/s")

# %% [markdown]
# The KT and Norrbin models share their linear part, so they only part
# ways once the cubic term starts to bite. The MMG ship slows in the turn
# as drift and rudder drag build up. The Abkowitz ship turns fastest
# because it runs at 5 m/s, where the same hull has a larger
# non-dimensional gain.
#
# The matrix-vector model shares its inertia and its damping at 2 m/s
# with the MMG hull, but its damping stays at those values while the
# Coriolis coupling grows with sway times yaw rate. Its rudder term also
# has no drift force at zero helm. Both make it turn harder and lose more
# speed than the MMG ship, so it suits station keeping better than
# maneuvering at speed.
