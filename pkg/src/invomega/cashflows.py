"""Cash-flow streams, scenario sets and the riskless replication of a stream.

A scenario is the full vector F_0..F_T with F_0 <= 0 the initial flow.
Splitting separates the later flows into inflows F+ and outflows F-; the
replication prices the riskless portfolio that reproduces both sides:
zero-coupon outlays covering every F- and bond notionals paying every F+.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .curves import YieldCurve
from .errors import HorizonMismatchError, InputError

_WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class CashFlowScenario:
    """One realization F_0..F_T of a project's cash flows (T >= 1)."""

    flows: tuple[float, ...]

    def __post_init__(self) -> None:
        flows = tuple(float(f) for f in self.flows)
        if len(flows) < 2:
            raise InputError("a scenario needs flows F_0..F_T with T >= 1")
        for t, f in enumerate(flows):
            if not math.isfinite(f):
                raise InputError(f"flow at t={t} is not finite: {f!r}")
        if flows[0] > 0.0:
            raise InputError(
                f"F_0 must be the initial outlay (<= 0), got {flows[0]}"
            )
        object.__setattr__(self, "flows", flows)

    @property
    def horizon(self) -> int:
        return len(self.flows) - 1

    @property
    def initial_outlay(self) -> float:
        return -self.flows[0]


@dataclass(frozen=True)
class SplitStream:
    """Sign split of the t >= 1 flows plus the initial outlay."""

    initial_outlay: float
    positive: tuple[float, ...]
    negative: tuple[float, ...]


@dataclass(frozen=True)
class ReplicationDecomposition:
    """Riskless portfolio replicating one scenario.

    ``partial_outlays`` are the zero-coupon purchases I0^(t) guaranteeing each
    future outflow; ``bond_notionals`` B_t pay each inflow at maturity.
    ``total_outlay`` is the initial outlay plus the cost of covering the
    outflows; ``certainty_equivalent_outlay`` is the riskless investment that
    generates the same inflow pattern.
    """

    additional_outlay: float
    partial_outlays: tuple[float, ...]
    total_outlay: float
    bond_notionals: tuple[float, ...]
    certainty_equivalent_outlay: float


def split(scenario: CashFlowScenario) -> SplitStream:
    """Separate flows for t >= 1 into non-negative inflow/outflow parts."""
    later = scenario.flows[1:]
    return SplitStream(
        initial_outlay=max(-scenario.flows[0], 0.0),
        positive=tuple(max(f, 0.0) for f in later),
        negative=tuple(max(-f, 0.0) for f in later),
    )


def replicate(scenario: CashFlowScenario, curve: YieldCurve) -> ReplicationDecomposition:
    """Price the riskless portfolio replicating ``scenario`` on ``curve``."""
    if curve.horizon < scenario.horizon:
        raise HorizonMismatchError(
            f"curve covers tenors 1..{curve.horizon} but the scenario needs "
            f"tenor {scenario.horizon}"
        )
    parts = split(scenario)
    partial_outlays = tuple(
        f / curve.growth_factor(t) for t, f in enumerate(parts.negative, start=1)
    )
    bond_notionals = tuple(
        f / curve.growth_factor(t) for t, f in enumerate(parts.positive, start=1)
    )
    additional = math.fsum(partial_outlays)
    return ReplicationDecomposition(
        additional_outlay=additional,
        partial_outlays=partial_outlays,
        total_outlay=parts.initial_outlay + additional,
        bond_notionals=bond_notionals,
        certainty_equivalent_outlay=math.fsum(bond_notionals),
    )


def present_value(flows: Sequence[float] | Iterable[float], curve: YieldCurve) -> float:
    """Present value of flows indexed by tenor 1..T on ``curve``."""
    values = tuple(float(f) for f in flows)
    if len(values) > curve.horizon:
        raise HorizonMismatchError(
            f"{len(values)} flows exceed curve horizon {curve.horizon}"
        )
    return math.fsum(f / curve.growth_factor(t) for t, f in enumerate(values, start=1))


@dataclass(frozen=True)
class ScenarioSet:
    """Weighted collection of scenarios sharing one horizon."""

    project_id: str
    scenarios: tuple[CashFlowScenario, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        scenarios = tuple(self.scenarios)
        if not scenarios:
            raise InputError("a scenario set needs at least one scenario")
        horizon = scenarios[0].horizon
        for i, scenario in enumerate(scenarios):
            if scenario.horizon != horizon:
                raise HorizonMismatchError(
                    f"scenario {i} has horizon {scenario.horizon}, expected {horizon}"
                )
        weights = tuple(float(w) for w in self.weights)
        if len(weights) != len(scenarios):
            raise InputError(
                f"{len(weights)} weights for {len(scenarios)} scenarios"
            )
        for i, w in enumerate(weights):
            if not math.isfinite(w) or w < 0.0:
                raise InputError(f"weight {i} must be finite and >= 0, got {w}")
        total = math.fsum(weights)
        if abs(total - 1.0) > _WEIGHT_TOL:
            raise InputError(f"weights must sum to 1 within {_WEIGHT_TOL}, got {total!r}")
        object.__setattr__(self, "scenarios", scenarios)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(
        cls, project_id: str, scenarios: Iterable[CashFlowScenario]
    ) -> "ScenarioSet":
        items = tuple(scenarios)
        n = len(items)
        if n == 0:
            raise InputError("a scenario set needs at least one scenario")
        return cls(project_id=project_id, scenarios=items, weights=(1.0 / n,) * n)

    @property
    def horizon(self) -> int:
        return self.scenarios[0].horizon

    def __len__(self) -> int:
        return len(self.scenarios)
