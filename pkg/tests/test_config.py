import copy
import math
import sys

import pytest

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from shipsim.config import BUNDLED_SHIP, DATA_DIR, MODEL_KINDS, ConfigError, load_scenario, load_ship, parse_scenario, parse_ship
from shipsim.maneuvers import RandomManeuver, ZigZag


@pytest.fixture(scope="module")
def ship_doc():
    with open(BUNDLED_SHIP, "rb") as fh:
        return tomllib.load(fh)


def edited(doc, section, **changes):
    out = copy.deepcopy(doc)
    for key, value in changes.items():
        if value is None:
            del out[section][key]
        else:
            out[section][key] = value
    return out


def test_bundled_ship_has_every_model(ship):
    assert ship.available_models() == MODEL_KINDS
    for kind in MODEL_KINDS:
        assert ship.model(kind).name == kind
    assert ship.mmg.eta == pytest.approx(ship.mmg.propeller.D_p / ship.mmg.rudder.H_R)


def test_unknown_key_reports_path(ship_doc):
    with pytest.raises(ConfigError, match=r"hull\.Y_vv: unknown key"):
        parse_ship(edited(ship_doc, "hull", Y_vv=0.1), "ship.toml")
    with pytest.raises(ConfigError, match=r"^ship.toml: cargo: unknown key"):
        parse_ship({**ship_doc, "cargo": {}}, "ship.toml")


def test_missing_key_reports_path(ship_doc):
    with pytest.raises(ConfigError, match=r"propeller\.D_p: missing required key"):
        parse_ship(edited(ship_doc, "propeller", D_p=None), "ship.toml")


def test_eta_is_derived_not_configured(ship_doc):
    with pytest.raises(ConfigError, match=r"rudder\.eta"):
        parse_ship(edited(ship_doc, "rudder", eta=0.7), "ship.toml")


def test_resistance_sign_checked_only_in_strict_mode(ship_doc):
    faulty = edited(ship_doc, "hull", X_0F=0.025)
    with pytest.raises(ConfigError, match=r"hull\.X_0F: must be negative"):
        parse_ship(faulty, "ship.toml")
    assert parse_ship(faulty, "ship.toml", strict=False).mmg.hull.X_0F == 0.025


def test_invalid_value_reports_section(ship_doc):
    with pytest.raises(ConfigError, match=r"propeller"):
        parse_ship(edited(ship_doc, "propeller", w_p0=1.5), "ship.toml")


def test_missing_file():
    with pytest.raises(ConfigError, match="file not found"):
        load_ship("/nonexistent/ship.toml")


@pytest.mark.parametrize("path", sorted((DATA_DIR / "scenarios").glob("*.toml")), ids=lambda p: p.stem)
def test_bundled_scenarios_load(path):
    scenario = load_scenario(path)
    assert scenario.name == path.stem
    assert scenario.model in MODEL_KINDS


def _scenario_doc(**overrides):
    doc = {
        "name": "probe",
        "ship": str(BUNDLED_SHIP),
        "model": "mmg",
        "simulation": {"t_end": 10.0, "dt": 0.1},
        "maneuver": {"type": "zigzag", "delta_deg": 10.0, "psi_switch_deg": 10.0},
    }
    doc.update(overrides)
    return doc


def test_scenario_parsing_converts_degrees():
    scenario = parse_scenario(_scenario_doc(wind={"U_T": 5.0, "gamma_T_deg": 90.0}, initial={"u": 2.0, "psi_deg": 45.0}))
    assert isinstance(scenario.maneuver, ZigZag)
    assert scenario.maneuver.delta == pytest.approx(math.radians(10.0))
    assert scenario.wind.gamma_T == pytest.approx(math.pi / 2)
    assert scenario.initial.psi == pytest.approx(math.pi / 4) and scenario.initial.u == 2.0


def test_scenario_errors():
    with pytest.raises(ConfigError, match="maneuver.type"):
        parse_scenario(_scenario_doc(maneuver={"type": "spiral"}))
    with pytest.raises(ConfigError, match=r"maneuver: rudder angle"):
        parse_scenario(_scenario_doc(maneuver={"type": "turning", "delta_deg": 50.0}))
    with pytest.raises(ConfigError, match=r"simulation\.t_end"):
        parse_scenario(_scenario_doc(simulation={"dt": 0.1}))
    with pytest.raises(ConfigError, match="^<scenario>: weather: unknown key"):
        parse_scenario(_scenario_doc(weather={}))


def test_random_scenario():
    doc = _scenario_doc(maneuver={"type": "random", "seed": 4, "hold_min": 5.0, "hold_max": 20.0,
                                  "delta_max_deg": 20.0, "n_min": 1.0, "n_max": 3.0})
    scenario = parse_scenario(doc)
    assert isinstance(scenario.maneuver, RandomManeuver) and scenario.maneuver.seed == 4
