"""Riskless term structure: zero rates, discount factors and reinvestment forwards.

The time grid is integer periods 1..horizon. Rates are stored annualized;
cumulative rates are always derived via (1+r_t)^t - 1, never stored. There is
no extrapolation: asking for a tenor beyond the curve horizon is an error.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InputError, TenorOutOfRangeError


@dataclass(frozen=True)
class YieldCurve:
    """Annualized riskless zero rates r_t on contiguous integer tenors 1..horizon."""

    rates: tuple[float, ...]

    def __post_init__(self) -> None:
        rates = tuple(float(r) for r in self.rates)
        if not rates:
            raise InputError("yield curve needs at least one tenor")
        for t, r in enumerate(rates, start=1):
            if not math.isfinite(r):
                raise InputError(f"rate at tenor {t} is not finite: {r!r}")
            if r <= -1.0:
                raise InputError(f"rate at tenor {t} must exceed -1, got {r}")
        object.__setattr__(self, "rates", rates)

    @classmethod
    def flat(cls, rate: float, horizon: int) -> "YieldCurve":
        if horizon < 1:
            raise InputError(f"horizon must be >= 1, got {horizon}")
        return cls((float(rate),) * horizon)

    @classmethod
    def from_csv(cls, path: str | Path) -> "YieldCurve":
        """Load a curve from CSV with header ``tenor,rate`` and tenors 1..T."""
        rows: list[tuple[int, float]] = []
        with open(path, newline="") as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None or [h.strip().lower() for h in header[:2]] != ["tenor", "rate"]:
                raise InputError(f"{path}: expected header 'tenor,rate', got {header!r}")
            for lineno, row in enumerate(reader, start=2):
                if not row or all(not cell.strip() for cell in row):
                    continue
                if len(row) != 2:
                    raise InputError(f"{path}: row {lineno}: expected 2 columns, got {len(row)}")
                try:
                    rows.append((int(row[0]), float(row[1])))
                except ValueError as exc:
                    raise InputError(f"{path}: row {lineno}: {exc}") from exc
        if not rows:
            raise InputError(f"{path}: no curve rows")
        rows.sort(key=lambda item: item[0])
        tenors = [t for t, _ in rows]
        if tenors != list(range(1, len(rows) + 1)):
            raise InputError(f"{path}: tenors must be contiguous 1..T, got {tenors}")
        return cls(tuple(r for _, r in rows))

    @property
    def horizon(self) -> int:
        return len(self.rates)

    def _check_tenor(self, t: int, minimum: int = 1) -> None:
        if not minimum <= t <= self.horizon:
            raise TenorOutOfRangeError(
                f"tenor {t} outside curve range {minimum}..{self.horizon}"
            )

    def annual_rate(self, t: int) -> float:
        self._check_tenor(t)
        return self.rates[t - 1]

    def growth_factor(self, t: int) -> float:
        """Total growth (1+r_t)^t of one unit held to tenor t; 1 at t = 0."""
        if t == 0:
            return 1.0
        self._check_tenor(t)
        return _growth_factors(self)[t - 1]

    def cumulative_rate(self, t: int) -> float:
        """Cumulative (non-annualized) rate R_t = (1+r_t)^t - 1."""
        self._check_tenor(t)
        return self.growth_factor(t) - 1.0

    def discount_factor(self, t: int) -> float:
        """Present value of one unit paid at tenor t (1 at t = 0)."""
        if t == 0:
            return 1.0
        self._check_tenor(t)
        return 1.0 / self.growth_factor(t)

    def forward_curve(self, horizon: int) -> "ForwardCurve":
        """Reinvestment forwards locked today for rolling each tenor to ``horizon``.

        The rate from tenor t satisfies (1+r_t)^t * (1+R^f) = (1+r_T)^T, i.e.
        reinvesting a tenor-t payoff forward must replicate a direct hold to T.
        Cash received at t = horizon is not reinvested (rate exactly 0).
        """
        self._check_tenor(horizon)
        top = self.growth_factor(horizon)
        rates_from = tuple(
            top / self.growth_factor(t) - 1.0 if t < horizon else 0.0
            for t in range(1, horizon + 1)
        )
        return ForwardCurve(horizon=horizon, rates_from=rates_from)


@lru_cache(maxsize=64)
def _growth_factors(curve: YieldCurve) -> tuple[float, ...]:
    return tuple((1.0 + r) ** t for t, r in enumerate(curve.rates, start=1))


@dataclass(frozen=True)
class ForwardCurve:
    """Total reinvestment rates from each tenor t to a common horizon."""

    horizon: int
    rates_from: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.horizon < 1 or len(self.rates_from) != self.horizon:
            raise InputError(
                f"forward curve needs one rate per tenor 1..{self.horizon}, "
                f"got {len(self.rates_from)}"
            )
        if self.rates_from[-1] != 0.0:
            raise InputError("rate at the horizon tenor must be exactly 0")

    def rate_from(self, t: int) -> float:
        if not 1 <= t <= self.horizon:
            raise TenorOutOfRangeError(f"tenor {t} outside 1..{self.horizon}")
        return self.rates_from[t - 1]

    def future_value(self, positive_flows: Sequence[float] | Iterable[float]) -> float:
        """Horizon value of non-negative flows F_1..F_T rolled at the locked forwards."""
        flows = tuple(float(f) for f in positive_flows)
        if len(flows) != self.horizon:
            raise InputError(
                f"expected {self.horizon} flows (tenors 1..{self.horizon}), got {len(flows)}"
            )
        for t, f in enumerate(flows, start=1):
            if not math.isfinite(f) or f < 0.0:
                raise InputError(f"flow at tenor {t} must be finite and >= 0, got {f}")
        return math.fsum(f * (1.0 + rf) for f, rf in zip(flows, self.rates_from))
