"""Weighted empirical distributions, summary statistics and the Omega measure.

The Monte Carlo sample *is* the distribution here: Omega's upside/downside
partial moments are exact weighted sums over the samples, with no binning or
smoothing. Construction sorts once (stable, ties broken by original index) and
every reduction runs over the sorted view, so results do not depend on the
order samples were supplied in.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Callable, Mapping, Sequence

import numpy as np

from .errors import InputError

_WEIGHT_TOL = 1e-12


class EmpiricalDistribution:
    """Immutable weighted sample set with a sorted view."""

    __slots__ = ("_values", "_weights", "_sorted_values", "_sorted_weights")

    def __init__(self, values: Sequence[float], weights: Sequence[float] | None = None):
        vals = np.asarray(values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise InputError("distribution needs a non-empty 1-D sample sequence")
        if not np.all(np.isfinite(vals)):
            raise InputError("samples must be finite")
        if weights is None:
            wts = np.full(vals.size, 1.0 / vals.size)
        else:
            wts = np.asarray(weights, dtype=float)
            if wts.shape != vals.shape:
                raise InputError(f"{wts.size} weights for {vals.size} samples")
            if not np.all(np.isfinite(wts)) or np.any(wts < 0.0):
                raise InputError("weights must be finite and >= 0")
            total = math.fsum(wts.tolist())
            if abs(total - 1.0) > _WEIGHT_TOL:
                raise InputError(f"weights must sum to 1 within {_WEIGHT_TOL}, got {total!r}")
        order = np.argsort(vals, kind="stable")
        self._values = vals.copy()
        self._weights = wts.copy()
        self._sorted_values = vals[order]
        self._sorted_weights = wts[order]
        for arr in (self._values, self._weights, self._sorted_values, self._sorted_weights):
            arr.setflags(write=False)

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def sorted_values(self) -> np.ndarray:
        return self._sorted_values

    @property
    def sorted_weights(self) -> np.ndarray:
        return self._sorted_weights

    @property
    def size(self) -> int:
        return int(self._values.size)

    def __len__(self) -> int:
        return self.size

    def mean(self) -> float:
        # anchored at the smallest sample so a constant distribution is exact
        anchor = float(self._sorted_values[0])
        return anchor + float(
            np.sum(self._sorted_weights * (self._sorted_values - anchor))
        )

    def shifted(self, offset: float) -> "EmpiricalDistribution":
        return EmpiricalDistribution(self._values + offset, self._weights)

    def scaled(self, factor: float) -> "EmpiricalDistribution":
        return EmpiricalDistribution(self._values * factor, self._weights)


@dataclass(frozen=True)
class SummaryStats:
    """Weighted mean/median/std/skewness; std and skewness may be undefined."""

    mean: float
    median: float
    std_dev: float | None
    skewness: float | None


def summarize(dist: EmpiricalDistribution) -> SummaryStats:
    """Weighted summary statistics (population moments, lower weighted median)."""
    sv = dist.sorted_values
    sw = dist.sorted_weights
    mean = dist.mean()
    cum = np.cumsum(sw)
    idx = min(int(np.searchsorted(cum, 0.5, side="left")), dist.size - 1)
    median = float(sv[idx])
    if dist.size < 2:
        return SummaryStats(mean=mean, median=median, std_dev=None, skewness=None)
    centered = sv - mean
    variance = float(np.sum(sw * centered * centered))
    std = math.sqrt(variance) if variance > 0.0 else 0.0
    if std == 0.0:
        return SummaryStats(mean=mean, median=median, std_dev=0.0, skewness=None)
    skew = float(np.sum(sw * centered * centered * centered)) / std**3
    return SummaryStats(mean=mean, median=median, std_dev=std, skewness=skew)


@dataclass(frozen=True)
class OmegaResult:
    """Upside/downside partial moments at a threshold and their ratio.

    ``omega`` is +inf when there is upside but no downside mass and nan when
    the threshold carries neither (a point mass exactly at the threshold).
    """

    threshold: float
    call: float
    put: float
    omega: float

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.omega)

    @property
    def is_indeterminate(self) -> bool:
        return math.isnan(self.omega)


def omega(dist: EmpiricalDistribution, threshold: float) -> OmegaResult:
    """Omega at ``threshold``: expected excess above it over expected shortfall below."""
    if not math.isfinite(threshold):
        raise InputError(f"threshold must be finite, got {threshold!r}")
    diff = dist.sorted_values - threshold
    call = float(np.sum(dist.sorted_weights * np.maximum(diff, 0.0)))
    put = float(np.sum(dist.sorted_weights * np.maximum(-diff, 0.0)))
    if put > 0.0:
        value = call / put
    elif call > 0.0:
        value = math.inf
    else:
        value = math.nan
    return OmegaResult(threshold=threshold, call=call, put=put, omega=value)


def omega_curve(
    dist: EmpiricalDistribution, grid: Sequence[float]
) -> tuple[OmegaResult, ...]:
    """Omega at each point of a strictly increasing threshold grid."""
    _check_grid(grid)
    return tuple(omega(dist, lam) for lam in grid)


def _check_grid(grid: Sequence[float]) -> None:
    if len(grid) == 0:
        raise InputError("threshold grid is empty")
    for lo, hi in zip(grid, grid[1:]):
        if not hi > lo:
            raise InputError(f"grid must be strictly increasing, got {lo} then {hi}")


def _compare(a: OmegaResult, b: OmegaResult) -> int:
    """Sign of Omega_a - Omega_b; infinities above all finite values,
    indeterminate points treated as incomparable (sign 0)."""
    if a.is_indeterminate or b.is_indeterminate:
        return 0
    if a.is_infinite and b.is_infinite:
        return 0
    if a.is_infinite:
        return 1
    if b.is_infinite:
        return -1
    diff = a.omega - b.omega
    return (diff > 0) - (diff < 0)


def crossing_on_grid(
    grid: Sequence[float],
    eval_a: Callable[[float], OmegaResult],
    eval_b: Callable[[float], OmegaResult],
    curve_a: Sequence[OmegaResult] | None = None,
    curve_b: Sequence[OmegaResult] | None = None,
) -> list[tuple[float, float]]:
    """Brackets where the ranking of two Omega curves flips along ``grid``.

    Each flip between adjacent grid points is refined by bisection (re-evaluating
    both curves at midpoints) until the bracket is no wider than the local grid
    step divided by 1024.
    """
    _check_grid(grid)
    if curve_a is None:
        curve_a = [eval_a(x) for x in grid]
    if curve_b is None:
        curve_b = [eval_b(x) for x in grid]
    if len(curve_a) != len(grid) or len(curve_b) != len(grid):
        raise InputError("curves and grid must have equal length")
    signs = [_compare(a, b) for a, b in zip(curve_a, curve_b)]
    brackets: list[tuple[float, float]] = []
    for i in range(len(grid) - 1):
        s_lo, s_hi = signs[i], signs[i + 1]
        if s_lo * s_hi >= 0:
            continue
        lo, hi = float(grid[i]), float(grid[i + 1])
        limit = (hi - lo) / 1024.0
        while hi - lo > limit:
            mid = 0.5 * (lo + hi)
            s_mid = _compare(eval_a(mid), eval_b(mid))
            if s_mid == s_lo:
                lo = mid
            else:
                hi = mid
        brackets.append((lo, hi))
    return brackets


def crossing(
    curve_a: Sequence[OmegaResult],
    curve_b: Sequence[OmegaResult],
    dist_a: EmpiricalDistribution,
    dist_b: EmpiricalDistribution,
) -> list[tuple[float, float]]:
    """Ranking flips between two Omega curves evaluated on one threshold grid."""
    grid_a = [r.threshold for r in curve_a]
    grid_b = [r.threshold for r in curve_b]
    if grid_a != grid_b:
        raise InputError("curves were evaluated on different threshold grids")
    return crossing_on_grid(
        grid_a,
        lambda lam: omega(dist_a, lam),
        lambda lam: omega(dist_b, lam),
        curve_a=curve_a,
        curve_b=curve_b,
    )


def _fmt(value: float | None) -> str:
    return repr(float(value)) if value is not None else "nan"


def write_omega_curve_csv(
    results: Sequence[OmegaResult], target: str | Path | IO[str]
) -> None:
    """Write ``threshold,call,put,omega`` rows (omega printed as inf/nan when flagged)."""

    def _write(handle: IO[str]) -> None:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["threshold", "call", "put", "omega"])
        for r in results:
            writer.writerow([repr(r.threshold), repr(r.call), repr(r.put), repr(r.omega)])

    if isinstance(target, (str, Path)):
        with open(target, "w", newline="") as handle:
            _write(handle)
    else:
        _write(target)


def write_summary_csv(
    summaries: Mapping[str, SummaryStats], target: str | Path | IO[str]
) -> None:
    """Write ``metric,mean,median,std,skewness`` rows, one per metric."""

    def _write(handle: IO[str]) -> None:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["metric", "mean", "median", "std", "skewness"])
        for name, s in summaries.items():
            writer.writerow([name, repr(s.mean), repr(s.median), _fmt(s.std_dev), _fmt(s.skewness)])

    if isinstance(target, (str, Path)):
        with open(target, "w", newline="") as handle:
            _write(handle)
    else:
        _write(target)
