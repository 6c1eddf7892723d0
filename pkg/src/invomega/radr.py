"""Conventional risk-adjusted-discount-rate valuation on vertically averaged flows.

The comparison is deliberately restricted the way the method itself is: flat
riskless rate, and canonical flows (single outlay at t=0, non-negative flows
after) unless the ``paper-table4`` mode is selected, which discounts negative
later flows at the risk-adjusted rate as well. The certainty-equivalent factor
alpha = ((1+r)/(1+k))^t splits each mean flow into riskless and risky parts;
the riskless present value of the risky parts is the implicit acceptance
scale lambda_radr.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .cashflows import CashFlowScenario, ScenarioSet
from .errors import DomainError, InputError, NonCanonicalFlowError
from .metrics import mirr

MODE_CANONICAL = "canonical-strict"
MODE_TABLE4 = "paper-table4"
MODES = (MODE_CANONICAL, MODE_TABLE4)


@dataclass(frozen=True)
class RadrInput:
    """Scenario set plus flat riskless rate r and risk-adjusted rate k >= r."""

    scenario_set: ScenarioSet
    riskless_rate: float
    radr_rate: float
    mode: str = MODE_CANONICAL

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise InputError(f"unknown mode {self.mode!r}, expected one of {MODES}")
        r, k = self.riskless_rate, self.radr_rate
        if not (math.isfinite(r) and math.isfinite(k)):
            raise InputError("rates must be finite")
        if r <= -1.0 or k <= -1.0:
            raise InputError("rates must exceed -1")
        if k < r:
            raise InputError(f"risk-adjusted rate {k} must be >= riskless rate {r}")
        if self.mode == MODE_CANONICAL:
            _check_canonical(self.scenario_set)


def _check_canonical(scenario_set: ScenarioSet) -> None:
    for i, scenario in enumerate(scenario_set.scenarios):
        for t, flow in enumerate(scenario.flows[1:], start=1):
            if flow < 0.0:
                raise NonCanonicalFlowError(
                    f"scenario {i} has negative flow {flow} at t={t}; "
                    "only a t=0 outlay may be negative"
                )


@dataclass(frozen=True)
class RadrResult:
    mean_flows: tuple[float, ...]
    npv_at_k: float
    mirr_at_k: float
    mean_npv_at_r: float
    lambda_radr: float
    alpha_factors: tuple[float, ...]
    accept: bool
    mode: str

    def to_dict(self) -> dict:
        return {
            "npv_at_k": self.npv_at_k,
            "mirr_at_k": self.mirr_at_k,
            "mean_npv_at_r": self.mean_npv_at_r,
            "lambda_radr": self.lambda_radr,
            "alpha_factors": list(self.alpha_factors),
            "accept": self.accept,
            "mode": self.mode,
        }


def vertical_average(scenario_set: ScenarioSet) -> tuple[float, ...]:
    """Weighted per-tenor mean of the flows, including the t=0 outlay."""
    horizon = scenario_set.horizon
    return tuple(
        math.fsum(
            w * s.flows[t]
            for s, w in zip(scenario_set.scenarios, scenario_set.weights)
        )
        for t in range(horizon + 1)
    )


def _flat_npv(flows: Sequence[float], rate: float) -> float:
    return flows[0] + math.fsum(
        f / (1.0 + rate) ** t for t, f in enumerate(flows[1:], start=1)
    )


def radr_valuation(radr_input: RadrInput) -> RadrResult:
    """Value the vertically averaged flows at the risk-adjusted rate.

    Returns the mean-flow NPV and MIRR at k, the mean riskless NPV, the
    implicit acceptance scale lambda_radr and the per-tenor certainty
    equivalent factors. Acceptance means NPV at k is positive.
    """
    r, k = radr_input.riskless_rate, radr_input.radr_rate
    means = vertical_average(radr_input.scenario_set)
    horizon = len(means) - 1
    alpha = tuple(((1.0 + r) / (1.0 + k)) ** t for t in range(1, horizon + 1))
    npv_at_k = _flat_npv(means, k)
    mean_npv_at_r = math.fsum(
        w * _flat_npv(s.flows, r)
        for s, w in zip(radr_input.scenario_set.scenarios, radr_input.scenario_set.weights)
    )
    lambda_radr = math.fsum(
        (1.0 - a) * f / (1.0 + r) ** t
        for t, (a, f) in enumerate(zip(alpha, means[1:]), start=1)
    )
    mirr_at_k = mirr(CashFlowScenario(means), k, k)
    return RadrResult(
        mean_flows=means,
        npv_at_k=npv_at_k,
        mirr_at_k=mirr_at_k,
        mean_npv_at_r=mean_npv_at_r,
        lambda_radr=lambda_radr,
        alpha_factors=alpha,
        accept=npv_at_k > 0.0,
        mode=radr_input.mode,
    )


@dataclass(frozen=True)
class EquivalenceReport:
    """The three equivalent acceptance predicates and their margins."""

    npv_at_k_positive: bool
    mirr_exceeds_rate: bool
    premium_exceeds_lambda: bool
    margins: tuple[float, float, float]
    valuation: RadrResult

    @property
    def agree(self) -> bool:
        return self.npv_at_k_positive == self.mirr_exceeds_rate == self.premium_exceeds_lambda

    @property
    def accept(self) -> bool:
        return self.npv_at_k_positive


def equivalence_check(radr_input: RadrInput) -> EquivalenceReport:
    """Evaluate NPV(k)>0, MIRR(k)>k and mean-premium>lambda_radr; they must agree.

    Only defined for canonical flows (the equivalences do not hold otherwise).
    """
    _check_canonical(radr_input.scenario_set)
    valuation = radr_valuation(radr_input)
    k = radr_input.radr_rate
    margins = (
        valuation.npv_at_k,
        valuation.mirr_at_k - k,
        valuation.mean_npv_at_r - valuation.lambda_radr,
    )
    report = EquivalenceReport(
        npv_at_k_positive=margins[0] > 0.0,
        mirr_exceeds_rate=margins[1] > 0.0,
        premium_exceeds_lambda=margins[2] > 0.0,
        margins=margins,
        valuation=valuation,
    )
    if not report.agree:
        raise DomainError(
            f"acceptance predicates disagree (margins {margins}); "
            "this indicates a numerically degenerate boundary case"
        )
    return report
