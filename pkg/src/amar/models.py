"""Model types for multiscale autoregression and the dense AR form.

A multiscale model regresses the series on running means of its own past
over q timescales tau_1 < ... < tau_q with coefficients alpha_1..alpha_q.
Any such model is a sparsely parameterised AR(p) for p >= tau_q, with

    beta_j = sum of alpha_k / tau_k over all scales tau_k >= j,

so the dense coefficient vector is piecewise constant with jumps exactly
at the timescales and zero beyond tau_q.  This module holds the two model
types, the exact mapping in both directions, stationarity tests, the
single-scale spectral density, and the representation of seasonal
AR-type models on the multiscale parameterisation.
"""

from __future__ import annotations

import cmath
import json
import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .exceptions import (
    DegenerateParameterError,
    InvalidOrderError,
    NotRepresentableError,
)

__all__ = [
    "InnovationSpec",
    "AmarModel",
    "ArModel",
    "CharPolynomial",
    "amar_to_ar",
    "ar_to_amar",
    "is_stationary_sufficient",
    "is_stationary_exact",
    "spectral_density_single_scale",
    "seasonal_to_amar",
]

# Relative tolerance for detecting equal runs when inverting the dense form.
RUN_TOLERANCE = 1e-9


@dataclass(frozen=True)
class InnovationSpec:
    """Innovation distribution for simulation.

    kind is one of "gaussian" (N(0, sigma^2)), "pareto" (symmetric with
    P(|Z| > z) = z**-tail_index for z >= 1) or "cauchy" (standard Cauchy,
    tail index 1).  seed keys the counter-based generator.
    """

    kind: str = "gaussian"
    sigma: float = 1.0
    tail_index: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("gaussian", "pareto", "cauchy"):
            raise ValueError(f"unknown innovation kind {self.kind!r}")
        if self.kind == "gaussian" and not self.sigma > 0:
            raise ValueError("gaussian innovations need sigma > 0")
        if self.kind == "pareto":
            if self.tail_index is None or not self.tail_index > 0:
                raise ValueError("pareto innovations need tail_index > 0")
            if self.tail_index == 2:
                raise ValueError("tail_index 2 is excluded")

    def with_seed(self, seed: int) -> "InnovationSpec":
        return replace(self, seed=seed)

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.kind == "gaussian":
            d["sigma"] = self.sigma
        elif self.kind == "pareto":
            d["tail_index"] = self.tail_index
        return d

    @classmethod
    def from_dict(cls, d: dict, seed: int = 0) -> "InnovationSpec":
        kind = d.get("kind", "gaussian")
        return cls(
            kind=kind,
            sigma=float(d.get("sigma", 1.0)),
            tail_index=d.get("tail_index"),
            seed=seed,
        )


@dataclass(frozen=True)
class AmarModel:
    """Multiscale autoregression with strictly increasing integer scales.

    Every coefficient must be nonzero: a zero coefficient would make the
    corresponding scale unidentifiable.
    """

    scales: tuple[int, ...]
    coeffs: tuple[float, ...]
    innovation: InnovationSpec = field(default_factory=InnovationSpec)

    def __post_init__(self):
        scales = tuple(int(s) for s in self.scales)
        coeffs = tuple(float(a) for a in self.coeffs)
        object.__setattr__(self, "scales", scales)
        object.__setattr__(self, "coeffs", coeffs)
        if len(scales) == 0:
            raise ValueError("at least one scale is required")
        if len(coeffs) != len(scales):
            raise ValueError("scales and coeffs must have equal length")
        if scales[0] < 1:
            raise ValueError("scales must be >= 1")
        if any(b <= a for a, b in zip(scales, scales[1:])):
            raise ValueError("scales must be strictly increasing")
        if any(a == 0.0 for a in coeffs):
            raise ValueError("coefficients must be nonzero")

    @property
    def q(self) -> int:
        return len(self.scales)

    @property
    def max_scale(self) -> int:
        return self.scales[-1]

    def to_json(self) -> str:
        payload = {
            "scales": list(self.scales),
            "coeffs": list(self.coeffs),
            "innovation": self.innovation.to_dict(),
            "seed": self.innovation.seed,
        }
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> "AmarModel":
        d = json.loads(text)
        innovation = InnovationSpec.from_dict(
            d.get("innovation", {}), seed=int(d.get("seed", 0))
        )
        return cls(
            scales=tuple(d["scales"]),
            coeffs=tuple(d["coeffs"]),
            innovation=innovation,
        )


@dataclass(frozen=True)
class ArModel:
    """Dense AR coefficient vector.

    Trailing coefficients may be exactly zero.  An empty vector is the
    degenerate white-noise model (used for pure-noise simulation and for
    reports with no detected scales).
    """

    coeffs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(b) for b in self.coeffs))

    @property
    def p(self) -> int:
        return len(self.coeffs)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)


@dataclass(frozen=True)
class CharPolynomial:
    """Coefficients of b(z) = 1 - beta_1 z - ... - beta_p z^p.

    coefficients[0] is the constant term and is always exactly 1.
    """

    coefficients: tuple[float, ...]

    def __post_init__(self):
        if len(self.coefficients) == 0 or self.coefficients[0] != 1.0:
            raise ValueError("constant term must be exactly 1")

    @classmethod
    def from_ar(cls, beta: ArModel) -> "CharPolynomial":
        return cls((1.0,) + tuple(-b for b in beta.coeffs))

    def evaluate(self, z: complex) -> complex:
        acc = 0.0 + 0.0j
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    def roots(self) -> np.ndarray:
        """All complex roots, via eigenvalues of the companion matrix.

        The roots of b(z) are the reciprocals of the eigenvalues of the
        AR transition (companion) matrix, which is better conditioned for
        large orders than direct polynomial deflation.
        """
        beta = [-c for c in self.coefficients[1:]]
        # strip trailing zeros: they contribute no roots
        while beta and beta[-1] == 0.0:
            beta.pop()
        p = len(beta)
        if p == 0:
            return np.array([], dtype=complex)
        companion = np.zeros((p, p))
        companion[0, :] = beta
        if p > 1:
            companion[1:, :-1] = np.eye(p - 1)
        eig = np.linalg.eigvals(companion)
        if not np.all(np.isfinite(eig)):
            warnings.warn(
                "eigenvalue computation produced non-finite values; "
                "root moduli are unreliable",
                RuntimeWarning,
                stacklevel=2,
            )
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(eig == 0, np.inf, 1.0 / eig)


def amar_to_ar(model: AmarModel, p: int) -> ArModel:
    """Dense AR(p) coefficients of a multiscale model.

    beta_j sums alpha_k / tau_k over all scales tau_k >= j, giving a
    piecewise-constant vector with jumps exactly at the scales and zeros
    for j > tau_q.

    Raises
    ------
    InvalidOrderError
        If p is smaller than the largest scale.
    """
    p = int(p)
    if p < model.max_scale:
        raise InvalidOrderError(
            f"order p={p} is below the largest scale {model.max_scale}"
        )
    beta = np.zeros(p)
    # suffix sums of alpha_k / tau_k, laid down run by run
    suffix = 0.0
    boundaries = (0,) + model.scales
    values = []
    for alpha, tau in zip(reversed(model.coeffs), reversed(model.scales)):
        suffix += alpha / tau
        values.append(suffix)
    values.reverse()
    for k, run_value in enumerate(values):
        beta[boundaries[k] : boundaries[k + 1]] = run_value
    return ArModel(tuple(beta))


def _runs(values: np.ndarray, rel_tol: float) -> list[int]:
    """1-based end positions of maximal runs of (nearly) equal values."""
    ends = []
    for j in range(len(values) - 1):
        a, b = values[j], values[j + 1]
        scale = max(abs(a), abs(b), 1e-300)
        if abs(a - b) > rel_tol * scale:
            ends.append(j + 1)
    ends.append(len(values))
    return ends


def ar_to_amar(beta: ArModel, innovation: InnovationSpec | None = None) -> AmarModel:
    """Invert the dense representation of an exactly piecewise-constant vector.

    The trailing zero run (if any) is stripped; remaining run boundaries
    become the scales and the coefficients are recovered from the run
    values by the telescoping identity alpha_k = tau_k (s_k - s_{k+1}),
    where s_k is the value of the k-th run.

    Raises
    ------
    NotRepresentableError
        If the vector is empty or identically zero: no multiscale model
        has q = 0.
    """
    v = beta.as_array()
    if v.size == 0 or np.all(v == 0.0):
        raise NotRepresentableError("zero vector has no multiscale representation")
    ends = _runs(v, RUN_TOLERANCE)
    run_values = [v[e - 1] for e in ends]
    if run_values[-1] == 0.0:
        ends = ends[:-1]
        run_values = run_values[:-1]
    scales = tuple(ends)
    alphas = []
    for k, tau in enumerate(scales):
        s_next = run_values[k + 1] if k + 1 < len(scales) else 0.0
        alphas.append(tau * (run_values[k] - s_next))
    model = AmarModel(scales, tuple(alphas), innovation or InnovationSpec())
    return model


def is_stationary_sufficient(model: AmarModel) -> bool:
    """Sufficient stationarity test: sum of |alpha_j| strictly below 1.

    Also necessary when every coefficient is non-negative.  A model can
    fail this test and still be stationary (the test is one-sided for
    signed coefficients).
    """
    return sum(abs(a) for a in model.coeffs) < 1.0


def is_stationary_exact(beta: ArModel, margin: float = 0.0) -> bool:
    """Exact test: every root of b(z) has modulus > 1 + margin."""
    if margin < 0:
        raise ValueError("margin must be non-negative")
    roots = CharPolynomial.from_ar(beta).roots()
    if roots.size == 0:
        return True
    return bool(np.all(np.abs(roots) > 1.0 + margin))


def spectral_density_single_scale(alpha1: float, tau1: int, f: float) -> float:
    """Spectral density of the single-scale model at frequency f, unit noise.

    Defined on the open interval (-1/2, 1/2); the value at f = 0 is the
    limit |1 - alpha1|**-2, independent of the scale.
    """
    tau1 = int(tau1)
    if tau1 < 1:
        raise ValueError("tau1 must be >= 1")
    if not -0.5 < f < 0.5:
        raise ValueError("frequency must lie in (-1/2, 1/2)")
    if f == 0.0:
        denom = abs(1.0 - alpha1)
        return math.inf if denom == 0.0 else denom**-2
    w = cmath.exp(-2j * math.pi * f)
    w_tau = cmath.exp(-2j * math.pi * f * tau1)
    transfer = 1.0 - (alpha1 / tau1) * w * (1.0 - w_tau) / (1.0 - w)
    mod = abs(transfer)
    return math.inf if mod == 0.0 else mod**-2


def seasonal_to_amar(phi1: float, Phi1: float, S: int = 12) -> AmarModel:
    """Multiscale representation of the product model (1 - Phi1 B^S)(1 - phi1 B).

    Expanding the lag polynomial gives dense coefficients beta_1 = phi1,
    beta_S = Phi1, beta_{S+1} = -phi1 Phi1 and zeros elsewhere; the
    multiscale form is recovered from that vector.  For S = 12 the scales
    are (1, 11, 12, 13) with coefficients
    (phi1, -11 Phi1, 12 Phi1 (1 + phi1), -13 phi1 Phi1).
    """
    S = int(S)
    if S < 2:
        raise ValueError("seasonal period must be >= 2")
    if phi1 == 0.0 or Phi1 == 0.0:
        raise DegenerateParameterError(
            "phi1 and Phi1 must be nonzero; construct the reduced model directly"
        )
    beta = np.zeros(S + 1)
    beta[0] = phi1
    beta[S - 1] = Phi1
    beta[S] = -phi1 * Phi1
    return ar_to_amar(ArModel(tuple(beta)))
