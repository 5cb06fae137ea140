"""CUSUM contrast and narrowest-over-threshold detection.

The detector operates on a 1-based coefficient vector v_1..v_p.  Each
candidate interval [s, e] is scored by the maximum over b in {s..e-1} of
the two-sided normalised partial-sum contrast

    C(s, e, b) = | sqrt((e-b) / ((e-s+1)(b-s+1))) * (v_s + ... + v_b)
                 - sqrt((b-s+1) / ((e-s+1)(e-b))) * (v_{b+1} + ... + v_e) |.

Detection recurses: among intervals inside the current segment whose
maximum contrast exceeds the threshold, the narrowest one wins (ties by
smallest start, then smallest end), its arg-max location is recorded, and
the two flanking segments are processed in turn.  A recorded location is
a change-point of the piecewise-constant vector, i.e. an estimated
timescale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Interval",
    "ContrastResult",
    "IntervalSet",
    "contrast_cusum",
    "scan_interval",
    "generate_intervals",
    "not_detect",
    "solution_path",
]


@dataclass(frozen=True)
class Interval:
    """Candidate segment [s, e], 1-based inclusive, with s < e."""

    s: int
    e: int

    def __post_init__(self):
        if not 1 <= self.s < self.e:
            raise ValueError(f"need 1 <= s < e, got [{self.s}, {self.e}]")

    @property
    def width(self) -> int:
        return self.e - self.s + 1


@dataclass(frozen=True)
class ContrastResult:
    interval: Interval
    argmax_b: int
    value: float


@dataclass(frozen=True)
class IntervalSet:
    intervals: tuple[Interval, ...]
    mode: str  # "all-pairs" or "random"
    m: int | None = None
    seed: int | None = None

    def __len__(self) -> int:
        return len(self.intervals)


def _prefix(v: np.ndarray) -> np.ndarray:
    return np.concatenate(([0.0], np.cumsum(v)))


def _contrasts(cs: np.ndarray, s: int, e: int) -> np.ndarray:
    """Contrast values at every b in {s..e-1}, from the prefix sums."""
    b = np.arange(s, e)
    n = e - s + 1
    left = cs[b] - cs[s - 1]
    right = cs[e] - cs[b]
    nl = b - s + 1
    nr = e - b
    return np.abs(np.sqrt(nr / (n * nl)) * left - np.sqrt(nl / (n * nr)) * right)


def contrast_cusum(v, s: int, e: int, b: int) -> float:
    """Contrast of v on [s, e] split at b (all indices 1-based)."""
    v = np.asarray(v, dtype=float)
    if not 1 <= s <= b < e <= len(v):
        raise ValueError(f"need 1 <= s <= b < e <= {len(v)}, got s={s}, b={b}, e={e}")
    cs = _prefix(v)
    n = e - s + 1
    left = cs[b] - cs[s - 1]
    right = cs[e] - cs[b]
    nl = b - s + 1
    nr = e - b
    return float(abs(np.sqrt(nr / (n * nl)) * left - np.sqrt(nl / (n * nr)) * right))


def scan_interval(v, iv: Interval) -> ContrastResult:
    """Maximising split of one interval; ties go to the smallest b."""
    v = np.asarray(v, dtype=float)
    if iv.e > len(v):
        raise ValueError(f"interval end {iv.e} beyond vector length {len(v)}")
    c = _contrasts(_prefix(v), iv.s, iv.e)
    k = int(np.argmax(c))
    return ContrastResult(iv, iv.s + k, float(c[k]))


def generate_intervals(p: int, mode: str = "all", *, m: int = 10000, seed: int = 0) -> IntervalSet:
    """Candidate intervals within [1, p].

    mode "all" enumerates all p(p-1)/2 pairs [i, j] with i < j.  mode
    "random" draws m endpoint pairs uniformly from {1..p} with
    replacement, orders each pair and redraws whenever the endpoints
    coincide, so exactly m valid intervals come back.
    """
    p = int(p)
    if p < 2:
        raise ValueError("p must be >= 2")
    if mode == "all":
        ivs = tuple(Interval(i, j) for i in range(1, p) for j in range(i + 1, p + 1))
        return IntervalSet(ivs, "all-pairs")
    if mode == "random":
        if m < 1:
            raise ValueError("m must be >= 1")
        rng = np.random.Generator(np.random.Philox(key=int(seed) & (2**64 - 1)))
        out = []
        while len(out) < m:
            a, b = rng.integers(1, p + 1, size=2)
            if a == b:
                continue
            out.append(Interval(int(min(a, b)), int(max(a, b))))
        return IntervalSet(tuple(out), "random", m=m, seed=seed)
    raise ValueError(f"unknown interval mode {mode!r}")


class _ScanTable:
    """Per-interval scan results cached as flat arrays.

    The contrast of an interval does not depend on the enclosing segment,
    so one pass over the interval set serves every threshold and every
    level of the recursion.
    """

    def __init__(self, v, interval_set):
        v = np.asarray(v, dtype=float)
        ivs = interval_set.intervals if isinstance(interval_set, IntervalSet) else tuple(interval_set)
        p = len(v)
        for iv in ivs:
            if iv.e > p:
                raise ValueError(f"interval end {iv.e} beyond vector length {p}")
        cs = _prefix(v)
        n = len(ivs)
        self.p = p
        self.s = np.empty(n, dtype=np.int64)
        self.e = np.empty(n, dtype=np.int64)
        self.bstar = np.empty(n, dtype=np.int64)
        self.value = np.empty(n, dtype=float)
        for i, iv in enumerate(ivs):
            c = _contrasts(cs, iv.s, iv.e)
            k = int(np.argmax(c))
            self.s[i] = iv.s
            self.e[i] = iv.e
            self.bstar[i] = iv.s + k
            self.value[i] = c[k]
        # lexicographic pick key: width, then s, then e
        base = p + 1
        width = self.e - self.s + 1
        self.key = (width * base + self.s) * base + self.e

    def detect(self, zeta: float, trace: list | None = None) -> list[int]:
        detected = []
        stack = [(1, self.p)]
        while stack:
            s0, e0 = stack.pop()
            if e0 <= s0:
                continue
            mask = (self.s >= s0) & (self.e <= e0) & (self.value > zeta)
            idx = np.flatnonzero(mask)
            if idx.size == 0:
                continue
            pick = idx[np.argmin(self.key[idx])]
            b = int(self.bstar[pick])
            detected.append(b)
            if trace is not None:
                trace.append((Interval(int(self.s[pick]), int(self.e[pick])), b))
            stack.append((s0, b))
            stack.append((b + 1, e0))
        return sorted(detected)


def not_detect(v, intervals, zeta: float, trace: list | None = None) -> list[int]:
    """Estimated change-point locations of v, sorted ascending.

    An empty result is a valid outcome (no location exceeded the
    threshold).  The comparison against the threshold is strict.
    """
    v = np.asarray(v, dtype=float)
    if len(v) < 2:
        raise ValueError("signal must have length >= 2")
    if zeta <= 0:
        raise ValueError("threshold must be positive")
    return _ScanTable(v, intervals).detect(zeta, trace=trace)


def solution_path(v, intervals, zeta_grid) -> list[tuple[float, list[int]]]:
    """Detections at each threshold of a strictly descending grid.

    Each threshold is evaluated independently; results for larger
    thresholds need not nest inside those for smaller ones.
    """
    grid = [float(z) for z in zeta_grid]
    if not grid:
        raise ValueError("zeta_grid must be nonempty")
    if any(b >= a for a, b in zip(grid, grid[1:])):
        raise ValueError("zeta_grid must be strictly descending")
    v = np.asarray(v, dtype=float)
    if len(v) < 2:
        raise ValueError("signal must have length >= 2")
    table = _ScanTable(v, intervals)
    return [(z, table.detect(z)) for z in grid]
