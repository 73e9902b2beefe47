# %% [markdown]
# # Functional requirements as executable probes
#
# Every requirement becomes a short scripted run with a measured number
# and a threshold. A ship with reversed resistance signs shows what a
# failing report looks like.

# %%
from dataclasses import replace

from shipsim.config import load_ship
from shipsim.requirements import check_requirements

ship = load_ship()
report = check_requirements(ship.mmg, ship.actuators)
print(report.format())

# %%
hull = ship.mmg.hull
faulty = replace(ship.mmg, hull=replace(hull, X_0F=-hull.X_0F, X_0A=-hull.X_0A))
bad = check_requirements(faulty, ship.actuators)
for item in bad.items:
    if not item.passed:
        print(item.line())
print(f"{bad.pass_count}/{len(bad.items)} pass")
