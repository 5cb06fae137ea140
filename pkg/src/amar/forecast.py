"""One-step-ahead forecasts and out-of-sample accuracy metrics.

Forecasts condition on observed past values only: a rolling evaluation
over a test segment predicts each point from the true history up to the
previous observation, never from earlier predictions.
"""

from __future__ import annotations

import math

import numpy as np

from .exceptions import InsufficientHistoryError
from .models import AmarModel

__all__ = [
    "predict_next",
    "rolling_predictions",
    "rolling_mspe",
    "rolling_rmspe",
    "hit_rate",
]


def _scales_alpha(model) -> tuple[tuple[int, ...], tuple[float, ...]]:
    """Accept an AmarModel, a fit report, or a plain (scales, alpha) pair."""
    if isinstance(model, AmarModel):
        return model.scales, model.coeffs
    scales = getattr(model, "scales", None)
    if scales is not None:
        alpha = getattr(model, "alpha", None)
        if alpha is None:
            alpha = getattr(model, "coeffs")
        return tuple(scales), tuple(alpha)
    scales, alpha = model
    return tuple(scales), tuple(alpha)


def predict_next(model, history) -> float:
    """Conditional mean of the next observation given the history tail.

    An empty scale set is the mean-zero null model and predicts 0.
    """
    scales, alpha = _scales_alpha(model)
    history = np.asarray(history, dtype=float)
    if not scales:
        return 0.0
    if len(history) < scales[-1]:
        raise InsufficientHistoryError(
            f"need at least {scales[-1]} past values, got {len(history)}"
        )
    return float(sum(a * history[-tau:].mean() for a, tau in zip(alpha, scales)))


def rolling_predictions(model, test, history) -> np.ndarray:
    """One-step predictions for each test point, conditioning on truth."""
    scales, alpha = _scales_alpha(model)
    test = np.asarray(test, dtype=float)
    history = np.asarray(history, dtype=float)
    if test.size == 0:
        raise ValueError("test segment must be nonempty")
    if not scales:
        return np.zeros(len(test))
    tau_q = scales[-1]
    if len(history) < tau_q:
        raise InsufficientHistoryError(
            f"need at least {tau_q} past values, got {len(history)}"
        )
    full = np.concatenate((history, test))
    cs = np.concatenate(([0.0], np.cumsum(full)))
    t = np.arange(len(history), len(full))
    pred = np.zeros(len(test))
    for a, tau in zip(alpha, scales):
        pred += a * (cs[t] - cs[t - tau]) / tau
    return pred


def rolling_mspe(model, test, history) -> float:
    """Mean squared one-step prediction error over the test segment."""
    pred = rolling_predictions(model, test, history)
    err = np.asarray(test, dtype=float) - pred
    return float(err @ err / len(err))


def rolling_rmspe(model, test, history) -> float:
    return math.sqrt(rolling_mspe(model, test, history))


def hit_rate(model, test, history) -> float:
    """Fraction of test points whose sign the forecast gets right.

    A zero prediction scores only against a zero realisation.
    """
    pred = rolling_predictions(model, test, history)
    actual = np.asarray(test, dtype=float)
    return float(np.mean(np.sign(pred) == np.sign(actual)))
