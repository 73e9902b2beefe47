"""Fitting simple models to recorded trajectories.

* :func:`fit_kt` estimates first-order yaw-response gain and time constant
  by least squares on ``T r_dot + r = K delta``.
* :func:`fit_ar` fits autoregressive models of increasing order to one
  channel and keeps the one with the lowest AIC.
* :func:`training_length_metric` makes a training-record length
  non-dimensional with ship length and speed.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .response import NomotoKT

KNOT = 0.5144  # m/s


class InsufficientExcitation(ValueError):
    pass


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled channels; angles in rad, rates in rad/s."""

    dt: float
    r: np.ndarray
    delta: np.ndarray
    u: np.ndarray | None = None
    v_m: np.ndarray | None = None

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("sample period must be positive")
        for name in ("r", "delta", "u", "v_m"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, np.asarray(value, dtype=float))
        if len(self.r) < 3:
            raise ValueError("a time series needs at least 3 samples")
        if len(self.delta) != len(self.r):
            raise ValueError("channels r and delta differ in length")

    def __len__(self) -> int:
        return len(self.r)

    @classmethod
    def from_columns(cls, t, r, delta, u=None, v_m=None, rtol: float = 1e-6) -> "TimeSeries":
        """Build from a time column; raises if the sampling is not uniform."""
        t = np.asarray(t, dtype=float)
        if len(t) < 3:
            raise ValueError("a time series needs at least 3 samples")
        steps = np.diff(t)
        dt = float(np.mean(steps))
        if not dt > 0 or np.max(np.abs(steps - dt)) > rtol * max(dt, 1.0):
            raise ValueError("time column is not uniformly sampled")
        return cls(dt, r, delta, u, v_m)


def read_csv_columns(path: str | Path) -> dict[str, np.ndarray]:
    """Read a trajectory CSV into named float columns."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        rows = [row for row in reader if row]
    data = np.array(rows, dtype=float).reshape(len(rows), len(header))
    return {name: data[:, i] for i, name in enumerate(header)}


def series_from_csv(path: str | Path) -> TimeSeries:
    cols = read_csv_columns(path)
    for name in ("t", "r", "delta"):
        if name not in cols:
            raise ValueError(f"{path}: missing column {name!r}")
    return TimeSeries.from_columns(cols["t"], cols["r"], cols["delta"], cols.get("u"), cols.get("v_m"))


def moving_average(x, window: int) -> np.ndarray:
    """Centered moving average over ``window`` samples (odd), shrinking at the ends."""
    x = np.asarray(x, dtype=float)
    if window <= 1:
        return x.copy()
    if window % 2 == 0:
        raise ValueError("smoothing window must be odd")
    half = window // 2
    c = np.concatenate(([0.0], np.cumsum(x)))
    idx = np.arange(len(x))
    lo = np.maximum(idx - half, 0)
    hi = np.minimum(idx + half + 1, len(x))
    return (c[hi] - c[lo]) / (hi - lo)


def central_difference(x, dt: float) -> np.ndarray:
    """Second-order central differences inside, one-sided at both ends."""
    return np.gradient(np.asarray(x, dtype=float), dt, edge_order=2)


@dataclass(frozen=True)
class KtFit:
    model: NomotoKT
    residual_rms: float


def fit_kt(series: TimeSeries, smooth: int = 1) -> KtFit:
    """Least-squares ``(K, T)`` from yaw rate and rudder angle.

    The rudder sample at ``t_k`` is taken to act over ``[t_k, t_k + dt)``,
    which is how trajectories are recorded. Integrating the model over the
    two intervals spanned by a central difference gives

        T (r[k+1] - r[k-1]) / (2 dt) + mean(r) = K (delta[k-1] + delta[k]) / 2

    so interior rows pair the central difference with those interval
    averages; this keeps rudder switches between samples from biasing the
    fit. End rows use one-sided differences and the raw samples.

    ``smooth`` is an odd moving-average window applied identically to both
    channels first. The same linear filter on both sides leaves the model
    relation intact, so it only trades noise against resolution.
    """
    delta = moving_average(series.delta, smooth)
    r = moving_average(series.r, smooth)
    scale = max(np.max(np.abs(delta)), 1e-300)
    if np.ptp(delta) <= 1e-12 * scale:
        raise InsufficientExcitation("insufficient excitation: rudder angle is constant")
    r_dot = central_difference(r, series.dt)
    delta_avg = delta.copy()
    delta_avg[1:-1] = 0.5 * (delta[:-2] + delta[1:-1])
    r_avg = r.copy()
    r_avg[1:-1] = 0.25 * (r[:-2] + 2.0 * r[1:-1] + r[2:])
    A = np.column_stack((delta_avg, -r_dot))
    if np.linalg.matrix_rank(A) < 2:
        raise InsufficientExcitation("insufficient excitation: regression is rank-deficient")
    (K, T), *_ = np.linalg.lstsq(A, r_avg, rcond=None)
    if not T > 0:
        raise InsufficientExcitation(f"insufficient excitation: fitted time constant {T!r} is not positive")
    resid = r_avg - A @ np.array([K, T])
    return KtFit(NomotoKT(float(K), float(T)), float(np.sqrt(np.mean(resid**2))))


@dataclass(frozen=True)
class ArModel:
    """``x_t = sum_i a_i x_{t-i} + v_t`` with ``Var(v) = sigma2``."""

    coefficients: tuple[float, ...]
    sigma2: float
    stderr: tuple[float, ...] = ()
    aic: dict | None = None

    def __post_init__(self):
        if len(self.coefficients) < 1:
            raise ValueError("AR order must be at least 1")
        if self.sigma2 < 0:
            raise ValueError("AR noise variance must be non-negative")

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def predict_one(self, history) -> float:
        """One-step prediction from the most recent samples (last element newest)."""
        past = np.asarray(history, dtype=float)[::-1][: self.order]
        return float(np.dot(self.coefficients, past))


def _lagged(x: np.ndarray, order: int, start: int) -> np.ndarray:
    return np.column_stack([x[start - i : len(x) - i] for i in range(1, order + 1)])


def fit_ar(x, max_order: int) -> ArModel:
    """Fit AR(1..max_order) by least squares and return the AIC-best model.

    All orders are scored on the same ``N - max_order`` targets so their AIC
    values are comparable. The residual variance is the training-fit
    variance. It is floored at ``1e-24`` times the mean square of the data
    so that exactly-fitting models tie at the floor and the order penalty
    decides, instead of round-off.
    """
    x = np.asarray(x, dtype=float)
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    if len(x) <= 2 * max_order:
        raise ValueError(f"series too short: {len(x)} samples for max order {max_order}")
    target = x[max_order:]
    n = len(target)
    floor = 1e-24 * max(float(np.mean(x * x)), 1e-300)
    best = None
    scores = {}
    for order in range(1, max_order + 1):
        A = _lagged(x, order, max_order)
        coef, *_ = np.linalg.lstsq(A, target, rcond=None)
        resid = target - A @ coef
        sigma2 = max(float(np.mean(resid**2)), floor)
        aic = n * math.log(sigma2) + 2 * order
        scores[order] = aic
        if best is None or aic < best[0]:
            cov = sigma2 * np.linalg.pinv(A.T @ A)
            best = (aic, coef, sigma2, np.sqrt(np.clip(np.diag(cov), 0.0, None)))
    _, coef, sigma2, se = best
    return ArModel(tuple(float(c) for c in coef), sigma2, tuple(float(s) for s in se), scores)


def training_length_metric(T_train: float, V: float, L: float) -> float:
    """Record length in ship lengths travelled: ``T_train V / L``."""
    if not L > 0:
        raise ValueError("ship length must be positive")
    return T_train * V / L


def record_length(T_prime: float, V: float, L: float) -> float:
    """Inverse of :func:`training_length_metric`: seconds for a given ``T'``."""
    if not (L > 0 and V > 0):
        raise ValueError("ship length and speed must be positive")
    return T_prime * L / V
