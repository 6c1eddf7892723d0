"""Per-scenario project characteristics, risk premiums and threshold algebra.

Every quantity is taken against the riskless replication of the scenario:
profit and return compare the reinvested inflows with the total outlay
(initial outlay plus the cost of covering future outflows), NPV compares the
certainty-equivalent outlay with the total outlay, and the hurdle conversions
translate between an annualized-return floor and its NPV equivalent.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence

from .cashflows import CashFlowScenario, ReplicationDecomposition, ScenarioSet, replicate, split
from .curves import YieldCurve
from .errors import (
    DomainError,
    HorizonMismatchError,
    InputError,
    ReturnUndefinedError,
    ZeroOutlayError,
)

HURDLE_KINDS = ("delta_mu", "mu_star", "npv_star", "profit_star")


@dataclass(frozen=True)
class EvaluationResult:
    """All per-scenario characteristics plus the replication behind them."""

    npv: float
    terminal_profit: float
    terminal_return: float
    annualized_return: float
    profitability_index: float
    premium_npv: float
    premium_return: float
    replication: ReplicationDecomposition


@dataclass(frozen=True)
class HurdleSpec:
    """Investor hurdle: a return premium, return floor, NPV floor or profit floor."""

    kind: str
    value: float

    def __post_init__(self) -> None:
        if self.kind not in HURDLE_KINDS:
            raise InputError(f"unknown hurdle kind {self.kind!r}, expected one of {HURDLE_KINDS}")
        if not math.isfinite(self.value):
            raise InputError(f"hurdle value must be finite, got {self.value!r}")


@dataclass(frozen=True)
class ThresholdSet:
    """Mutually consistent return and NPV thresholds for one outlay basis."""

    mu_star: float
    npv_star: float
    basis_outlay: float


def evaluate(scenario: CashFlowScenario, curve: YieldCurve) -> EvaluationResult:
    """Compute NPV, terminal profit/return, annualized return, PI and premiums.

    Raises ZeroOutlayError when the total outlay is zero (returns and PI are
    undefined in that case). A scenario with no inflows at all yields an
    annualized return of -1 (total loss), not an error.
    """
    if curve.horizon < scenario.horizon:
        raise HorizonMismatchError(
            f"curve covers tenors 1..{curve.horizon} but the scenario needs "
            f"tenor {scenario.horizon}"
        )
    horizon = scenario.horizon
    rep = replicate(scenario, curve)
    total_outlay = rep.total_outlay
    if total_outlay <= 0.0:
        raise ZeroOutlayError("total outlay is zero: returns and PI are undefined")
    parts = split(scenario)
    fv_plus = curve.forward_curve(horizon).future_value(parts.positive)
    growth_T = curve.growth_factor(horizon)

    npv = rep.certainty_equivalent_outlay - total_outlay
    ratio = fv_plus / total_outlay
    terminal_return = ratio - 1.0
    annualized = ratio ** (1.0 / horizon) - 1.0 if ratio > 0.0 else -1.0
    pi = npv / total_outlay
    return EvaluationResult(
        npv=npv,
        terminal_profit=fv_plus - total_outlay,
        terminal_return=terminal_return,
        annualized_return=annualized,
        profitability_index=pi,
        premium_npv=npv,
        premium_return=growth_T * pi,
        replication=rep,
    )


def evaluate_set(
    scenario_set: ScenarioSet, curve: YieldCurve
) -> tuple[EvaluationResult, ...]:
    return tuple(evaluate(s, curve) for s in scenario_set.scenarios)


def mu_from_npv(npv: float, basis_outlay: float, curve: YieldCurve, horizon: int) -> float:
    """Annualized return implied by an NPV on a given outlay basis.

    Inverts (1+mu)^T = (1+r_T)^T * (npv/basis + 1); strictly increasing in npv.
    """
    if basis_outlay <= 0.0:
        raise ZeroOutlayError(f"basis outlay must be positive, got {basis_outlay}")
    ratio = npv / basis_outlay + 1.0
    if ratio <= 0.0:
        raise ReturnUndefinedError(
            f"return undefined: 1 + npv/outlay = {ratio} is not positive"
        )
    return (curve.growth_factor(horizon) * ratio) ** (1.0 / horizon) - 1.0


def npv_from_mu(mu: float, basis_outlay: float, curve: YieldCurve, horizon: int) -> float:
    """NPV equivalent of an annualized return floor; exact inverse of mu_from_npv."""
    if basis_outlay <= 0.0:
        raise ZeroOutlayError(f"basis outlay must be positive, got {basis_outlay}")
    if mu <= -1.0:
        raise ReturnUndefinedError(f"annualized return must exceed -1, got {mu}")
    return ((1.0 + mu) ** horizon / curve.growth_factor(horizon) - 1.0) * basis_outlay


def npv_from_profit(
    profit: float, basis_outlay: float, curve: YieldCurve, horizon: int
) -> float:
    """NPV equivalent of a terminal-profit floor on a given outlay basis."""
    if basis_outlay <= 0.0:
        raise ZeroOutlayError(f"basis outlay must be positive, got {basis_outlay}")
    # terminal profit = (npv + basis) * (1+r_T)^T - basis
    return (profit + basis_outlay) / curve.growth_factor(horizon) - basis_outlay


def thresholds(
    hurdle: HurdleSpec, basis_outlay: float, curve: YieldCurve, horizon: int
) -> ThresholdSet:
    """Derive the consistent (mu*, NPV*) pair from any supported hurdle form."""
    if basis_outlay <= 0.0:
        raise ZeroOutlayError(f"basis outlay must be positive, got {basis_outlay}")
    r_T = curve.annual_rate(horizon)
    if hurdle.kind == "delta_mu":
        mu_star = r_T + hurdle.value
        npv_star = npv_from_mu(mu_star, basis_outlay, curve, horizon)
    elif hurdle.kind == "mu_star":
        mu_star = hurdle.value
        npv_star = npv_from_mu(mu_star, basis_outlay, curve, horizon)
    elif hurdle.kind == "npv_star":
        npv_star = hurdle.value
        mu_star = mu_from_npv(npv_star, basis_outlay, curve, horizon)
    else:  # profit_star
        npv_star = npv_from_profit(hurdle.value, basis_outlay, curve, horizon)
        mu_star = mu_from_npv(npv_star, basis_outlay, curve, horizon)
    return ThresholdSet(mu_star=mu_star, npv_star=npv_star, basis_outlay=basis_outlay)


def mirr(scenario: CashFlowScenario, reinvest_rate: float, finance_rate: float) -> float:
    """Modified internal rate of return with flat reinvestment/financing rates.

    Inflows compound at the reinvestment rate to the horizon; outflows
    (including the initial outlay) discount at the financing rate to t = 0.
    """
    if reinvest_rate <= -1.0 or finance_rate <= -1.0:
        raise InputError("rates must exceed -1")
    parts = split(scenario)
    horizon = scenario.horizon
    compounded = math.fsum(
        f * (1.0 + reinvest_rate) ** (horizon - t)
        for t, f in enumerate(parts.positive, start=1)
    )
    financed = parts.initial_outlay + math.fsum(
        f / (1.0 + finance_rate) ** t for t, f in enumerate(parts.negative, start=1)
    )
    if financed <= 0.0:
        raise DomainError(
            f"MIRR undefined: financed outflows total {financed}, must be positive"
        )
    ratio = compounded / financed
    return ratio ** (1.0 / horizon) - 1.0 if ratio > 0.0 else -1.0


EVALUATION_COLUMNS = (
    "scenario",
    "npv",
    "profit",
    "terminal_return",
    "mu",
    "pi",
    "premium_npv",
    "premium_return",
    "total_outlay",
)


def write_evaluation_csv(
    results: Sequence[EvaluationResult], target: str | Path | IO[str]
) -> None:
    """Write one row per scenario in the standard evaluation-report layout."""

    def _write(handle: IO[str]) -> None:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(EVALUATION_COLUMNS)
        for i, r in enumerate(results):
            writer.writerow(
                [
                    i,
                    repr(r.npv),
                    repr(r.terminal_profit),
                    repr(r.terminal_return),
                    repr(r.annualized_return),
                    repr(r.profitability_index),
                    repr(r.premium_npv),
                    repr(r.premium_return),
                    repr(r.replication.total_outlay),
                ]
            )

    if isinstance(target, (str, Path)):
        with open(target, "w", newline="") as handle:
            _write(handle)
    else:
        _write(target)


def mean_basis_outlay(results: Iterable[EvaluationResult], weights: Sequence[float]) -> float:
    """Weighted mean of the per-scenario total outlays (threshold basis)."""
    return math.fsum(w * r.replication.total_outlay for r, w in zip(results, weights))
