"""Multiscale vector autoregression.

Each scale carries a dense d x d coefficient matrix applied to the vector
of per-component running means over that scale.  Scales are shared across
components; a simple heuristic selects them as the union of the scale
sets detected on each component separately.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .estimation import amar_fit
from .exceptions import InsufficientDataError, InsufficientHistoryError, SingularDesignError

__all__ = [
    "AmvarModel",
    "amvar_fit_given_scales",
    "union_scale_selection",
    "amvar_predict_next",
    "amvar_rolling_predictions",
]


@dataclass(frozen=True)
class AmvarModel:
    """Vector model: one d x d matrix per scale.

    coeff_mats[k][i, j] weights component j's running mean over
    scales[k] in the equation for component i.
    """

    scales: tuple[int, ...]
    coeff_mats: tuple[np.ndarray, ...]
    d: int

    def __post_init__(self):
        if len(self.coeff_mats) != len(self.scales):
            raise ValueError("one coefficient matrix per scale required")
        for mat in self.coeff_mats:
            if mat.shape != (self.d, self.d):
                raise ValueError(f"coefficient matrices must be {self.d}x{self.d}")

    @property
    def q(self) -> int:
        return len(self.scales)

    @property
    def max_scale(self) -> int:
        return self.scales[-1]


def _as_matrix(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2:
        raise ValueError("series must be a T x d array")
    return X


def _running_mean_block(X: np.ndarray, scales, t0: int):
    """Columns ordered scale-major: (k=1, j=1..d), (k=2, j=1..d), ..."""
    T, d = X.shape
    cs = np.concatenate((np.zeros((1, d)), np.cumsum(X, axis=0)))
    t = np.arange(t0, T)
    cols = []
    for tau in scales:
        cols.append((cs[t] - cs[t - tau]) / tau)
    return np.hstack(cols), X[t0:]


def amvar_fit_given_scales(X, scales) -> tuple[AmvarModel, np.ndarray]:
    """Equation-by-equation least squares with a fixed scale set.

    Every component is regressed on the same d*q running-mean columns,
    rows t = tau_q + 1 .. T, so the per-equation fits coincide with the
    joint multivariate least-squares solution.  Returns the model and the
    residual covariance matrix.
    """
    X = _as_matrix(X)
    scales = tuple(int(s) for s in scales)
    if len(scales) == 0:
        raise ValueError("scales must be nonempty")
    if any(b <= a for a, b in zip(scales, scales[1:])) or scales[0] < 1:
        raise ValueError("scales must be strictly increasing and >= 1")
    T, d = X.shape
    q = len(scales)
    tau_q = scales[-1]
    if T <= 2 * d * q + tau_q:
        raise InsufficientDataError(
            f"need T > 2*d*q + tau_q = {2 * d * q + tau_q}, got T={T}"
        )
    design, Y = _running_mean_block(X, scales, tau_q)
    coef, _, rank, _ = np.linalg.lstsq(design, Y, rcond=None)
    if rank < d * q:
        pair = _find_collinear_pair(design, scales, d)
        raise SingularDesignError(
            f"running-mean regressors are collinear ({pair})"
        )
    mats = tuple(coef[k * d : (k + 1) * d].T.copy() for k in range(q))
    resid = Y - design @ coef
    cov = resid.T @ resid / len(Y)
    return AmvarModel(scales, mats, d), cov


def _find_collinear_pair(design: np.ndarray, scales, d: int) -> str:
    ncols = design.shape[1]
    names = [f"scale {scales[k]} / component {j + 1}"
             for k in range(len(scales)) for j in range(d)]
    for a in range(ncols):
        for b in range(a + 1, ncols):
            if np.allclose(design[:, a], design[:, b]):
                return f"{names[a]} vs {names[b]}"
    return "no exactly duplicated pair; design is numerically rank deficient"


def union_scale_selection(X, **fit_options) -> tuple[int, ...]:
    """Scales for the vector model: union of per-component detections."""
    X = _as_matrix(X)
    if X.shape[1] < 2:
        raise ValueError("need at least two components")
    merged: set[int] = set()
    for j in range(X.shape[1]):
        report = amar_fit(X[:, j], **fit_options)
        merged.update(report.scales)
    return tuple(sorted(merged))


def amvar_predict_next(model: AmvarModel, history) -> np.ndarray:
    """Conditional mean of the next d-vector given the history rows."""
    H = _as_matrix(history)
    if H.shape[1] != model.d:
        raise ValueError(f"history has {H.shape[1]} components, model has {model.d}")
    if H.shape[0] < model.max_scale:
        raise InsufficientHistoryError(
            f"need at least {model.max_scale} past rows, got {H.shape[0]}"
        )
    out = np.zeros(model.d)
    for mat, tau in zip(model.coeff_mats, model.scales):
        out += mat @ H[-tau:].mean(axis=0)
    return out


def amvar_rolling_predictions(model: AmvarModel, test, history) -> np.ndarray:
    """One-step predictions for each test row, conditioning on truth."""
    test = _as_matrix(test)
    H = _as_matrix(history)
    if H.shape[0] < model.max_scale:
        raise InsufficientHistoryError(
            f"need at least {model.max_scale} past rows, got {H.shape[0]}"
        )
    full = np.vstack((H, test))
    cs = np.concatenate((np.zeros((1, model.d)), np.cumsum(full, axis=0)))
    t = np.arange(H.shape[0], full.shape[0])
    pred = np.zeros_like(test)
    for mat, tau in zip(model.coeff_mats, model.scales):
        pred += ((cs[t] - cs[t - tau]) / tau) @ mat.T
    return pred
