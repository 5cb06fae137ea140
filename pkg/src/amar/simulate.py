"""Sample-path generation under Gaussian or heavy-tailed innovations.

All randomness flows through numpy's Philox counter-based bit generator,
keyed directly by the user-supplied 64-bit seed, so streams are
reproducible across platforms and replications can be keyed independently
(replication r conventionally uses seed ^ r).
"""

from __future__ import annotations

import numpy as np
from scipy.signal import lfilter

from .exceptions import ExplosivePathError, NonStationaryError
from .models import AmarModel, ArModel, InnovationSpec, amar_to_ar, is_stationary_exact

__all__ = ["draw_innovations", "simulate", "default_burn_in", "replication_seed"]


def _generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=int(seed) & (2**64 - 1)))


def replication_seed(base_seed: int, r: int) -> int:
    """Seed for replication r: base_seed XOR r."""
    return int(base_seed) ^ int(r)


def draw_innovations(spec: InnovationSpec, n: int) -> np.ndarray:
    """n i.i.d. innovation draws, deterministic given spec.seed.

    Gaussian draws are N(0, sigma^2).  Pareto draws are symmetric with
    P(|Z| > z) = z**-tail_index for z >= 1 (support starts at 1, no
    variance normalisation).  Cauchy draws are standard Cauchy.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = _generator(spec.seed)
    if spec.kind == "gaussian":
        return rng.normal(0.0, spec.sigma, size=n)
    if spec.kind == "pareto":
        u = rng.random(size=n)
        magnitude = np.power(1.0 - u, -1.0 / spec.tail_index)
        sign = np.where(rng.random(size=n) < 0.5, -1.0, 1.0)
        return sign * magnitude
    return rng.standard_cauchy(size=n)


def default_burn_in(max_scale: int) -> int:
    return 1000 + 10 * int(max_scale)


def simulate(
    model: AmarModel | ArModel,
    T: int,
    burn_in: int | None = None,
    *,
    innovation: InnovationSpec | None = None,
    allow_nonstationary: bool = False,
    return_innovations: bool = False,
):
    """Generate a length-T path from the model's recursion.

    The recursion starts from a zero initial state, runs for
    burn_in + T steps and discards the first burn_in values.  burn_in
    defaults to 1000 + 10 * (largest scale).  Identical
    (model, T, burn_in, seed) inputs give bitwise-identical paths.

    Parameters
    ----------
    model : AmarModel or ArModel
        An empty ArModel yields i.i.d. innovations.
    innovation : InnovationSpec, optional
        Required for ArModel inputs; defaults to the model's own spec for
        AmarModel inputs.
    allow_nonstationary : bool
        Skip the exact stationarity gate (needed for unit-root presets).
    return_innovations : bool
        Also return the innovation stream aligned with the returned path
        (the last T draws), used by the benchmark harness for oracle
        prediction errors.

    Raises
    ------
    NonStationaryError
        If the model fails the exact root test and the flag is not set.
    ExplosivePathError
        If the path overflows to a non-finite value; the error reports
        the first bad index relative to the returned (post burn-in) path.
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    if isinstance(model, AmarModel):
        beta = amar_to_ar(model, model.max_scale)
        spec = innovation if innovation is not None else model.innovation
    else:
        beta = model
        spec = innovation if innovation is not None else InnovationSpec()
    if not allow_nonstationary and not is_stationary_exact(beta):
        raise NonStationaryError(
            "model fails the exact stationarity test; "
            "pass allow_nonstationary=True to simulate anyway"
        )
    if burn_in is None:
        burn_in = default_burn_in(beta.p if beta.p else 1)
    if burn_in < 0:
        raise ValueError("burn_in must be >= 0")

    eps = draw_innovations(spec, burn_in + T)
    if beta.p == 0:
        x = eps
    else:
        # X_t = sum_j beta_j X_{t-j} + eps_t, zero initial state
        x = lfilter([1.0], np.concatenate(([1.0], -beta.as_array())), eps)
    bad = ~np.isfinite(x)
    if bad.any():
        first = int(np.argmax(bad)) - burn_in
        raise ExplosivePathError(first)
    path = x[burn_in:]
    if return_innovations:
        return path, eps[burn_in:]
    return path
