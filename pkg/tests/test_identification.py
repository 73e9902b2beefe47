import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from shipsim import ShipState, SimulationConfig, simulate
from shipsim.identification import (
    KNOT,
    InsufficientExcitation,
    TimeSeries,
    fit_ar,
    fit_kt,
    moving_average,
    record_length,
    series_from_csv,
    training_length_metric,
)
from shipsim.integrate import FixedStep
from shipsim.maneuvers import ZigZag
from shipsim.response import KTModel, NomotoKT
from shipsim.scenario import write_csv


def kt_zigzag(K: float, T: float, dt: float = 0.1, t_end: float | None = None):
    # long enough for several switches even when the ship answers slowly
    t_end = t_end or max(300.0, 30 * T)
    config = SimulationConfig(t_end=t_end, mode=FixedStep(dt), control_period=dt)
    zig = ZigZag(math.radians(10.0), math.radians(10.0))
    return simulate(KTModel(NomotoKT(K, T)), zig.controller(), config, ShipState(u=2.0))


def series(traj, noise=0.0, seed=0):
    r = traj.column("r").copy()
    if noise:
        r += np.random.default_rng(seed).normal(0.0, noise * np.max(np.abs(r)), len(r))
    return TimeSeries(float(traj.t[1] - traj.t[0]), r, traj.column("delta"))


def ar_data(coefs, n, seed=0, noise=1.0, start=None):
    rng = np.random.default_rng(seed)
    p = len(coefs)
    x = np.zeros(n)
    if start is not None:
        x[:p] = start
    for t in range(p, n):
        x[t] = sum(c * x[t - i - 1] for i, c in enumerate(coefs)) + noise * rng.normal()
    return x


@pytest.mark.parametrize("K", [0.01, 0.08, 0.5])
@pytest.mark.parametrize("T", [1.0, 12.0, 100.0])
def test_kt_fit_noiseless_grid(K, T):
    fit = fit_kt(series(kt_zigzag(K, T))).model
    assert fit.K == pytest.approx(K, rel=5e-3)
    assert fit.T == pytest.approx(T, rel=5e-3)


def test_kt_fit_with_noise():
    fit = fit_kt(series(kt_zigzag(0.08, 12.0), noise=0.05, seed=2024), smooth=61).model
    assert fit.K == pytest.approx(0.08, rel=0.10) and fit.T == pytest.approx(12.0, rel=0.10)


def test_kt_fit_constant_rudder():
    with pytest.raises(InsufficientExcitation, match="insufficient excitation"):
        fit_kt(TimeSeries(0.1, np.linspace(0, 1, 50), np.full(50, 0.1)))


def test_moving_average():
    assert moving_average([1.0, 2.0, 3.0, 4.0], 3) == pytest.approx([1.5, 2.0, 3.0, 3.5])
    with pytest.raises(ValueError):
        moving_average([1.0, 2.0], 2)


def test_ar2_noiseless_exact():
    x = ar_data((1.2, -0.5), 200, noise=0.0, start=(1.0, 0.3))
    model = fit_ar(x, 4)
    assert model.order == 2
    assert model.coefficients == pytest.approx((1.2, -0.5), abs=1e-8)


@pytest.mark.parametrize("coefs", [(0.7,), (1.1, -0.4), (0.5, 0.2, -0.3), (0.4, -0.2, 0.3, -0.25)])
def test_aic_finds_true_order_on_noiseless_data(coefs):
    start = np.linspace(1.0, -0.5, len(coefs))
    x = ar_data(coefs, 120, noise=0.0, start=start)
    assert fit_ar(x, 6).order == len(coefs)


def test_ar1_with_noise():
    model = fit_ar(ar_data((0.8,), 2000, seed=0), 6)
    assert model.order == 1 and model.coefficients[0] == pytest.approx(0.8, rel=0.05)


def test_aic_selects_order_one_most_of_the_time():
    picks = [fit_ar(ar_data((0.8,), 2000, seed=s), 6).order for s in range(40)]
    assert picks.count(1) >= 20


def test_white_noise_coefficients_inside_band():
    model = fit_ar(np.random.default_rng(3).normal(size=3000), 4)
    assert all(abs(c) <= 3 * s for c, s in zip(model.coefficients, model.stderr))


def test_ar_errors():
    with pytest.raises(ValueError, match="too short"):
        fit_ar(np.ones(8), 4)
    with pytest.raises(ValueError):
        fit_ar(np.ones(20), 0)


def test_training_length_metric():
    V = 7 * KNOT
    assert V == pytest.approx(3.601, abs=1e-3)
    assert record_length(17.7, V, 325.0) == pytest.approx(1597, abs=1.0)
    assert training_length_metric(record_length(17.7, V, 325.0), V, 325.0) == pytest.approx(17.7, rel=1e-14)
    assert training_length_metric(1000.0, 0.0, 325.0) == 0
    assert training_length_metric(2000.0, V, 325.0) == pytest.approx(2 * training_length_metric(1000.0, V, 325.0))
    with pytest.raises(ValueError):
        training_length_metric(1.0, 1.0, 0.0)


@given(st.floats(1, 1e5), st.floats(0.1, 20), st.floats(10, 500), st.floats(1e-3, 1e3))
def test_training_length_unit_invariance(T, V, L, scale):
    assert math.isclose(training_length_metric(T, V * scale, L * scale), training_length_metric(T, V, L), rel_tol=1e-12)


def test_csv_round_trip(tmp_path):
    traj = kt_zigzag(0.08, 12.0, t_end=200.0)
    path = write_csv(traj, tmp_path / "zigzag.csv")
    loaded = series_from_csv(path)
    assert loaded.dt == pytest.approx(0.1, rel=1e-12)
    assert np.array_equal(loaded.r, traj.column("r")) and np.array_equal(loaded.delta, traj.column("delta"))
    fit = fit_kt(loaded).model
    assert fit.K == pytest.approx(0.08, rel=5e-3)


def test_time_series_validation():
    with pytest.raises(ValueError, match="uniformly"):
        TimeSeries.from_columns([0.0, 0.1, 0.3], [0, 0, 0], [0, 0, 0])
    with pytest.raises(ValueError):
        TimeSeries(0.1, [0.0, 1.0], [0.0, 1.0])
    with pytest.raises(ValueError):
        TimeSeries(0.1, [0.0, 1.0, 2.0], [0.0, 1.0])
