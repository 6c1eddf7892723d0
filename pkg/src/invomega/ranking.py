"""Project ranking by the Omega measure at an investor hurdle.

Every project is reduced to the empirical distribution of one metric (NPV or
annualized return mu). A shared hurdle is converted per project into a
threshold on that metric, Omega is evaluated there, and projects are ordered
by decreasing Omega. The hurdle sweep produces Omega-vs-hurdle curves whose
ranking flips can be localized exactly.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Sequence

from .cashflows import ScenarioSet
from .curves import YieldCurve
from .distributions import (
    EmpiricalDistribution,
    OmegaResult,
    SummaryStats,
    crossing_on_grid,
    omega,
    summarize,
)
from .errors import InputError
from .metrics import HurdleSpec, ThresholdSet, evaluate_set, mean_basis_outlay, thresholds

METRICS = ("npv", "mu")


@dataclass(frozen=True)
class ProjectEvaluation:
    """One project's metric distribution plus what hurdle conversion needs."""

    project_id: str
    metric: str
    distribution: EmpiricalDistribution
    basis_outlay: float
    horizon: int


def evaluate_project(
    scenario_set: ScenarioSet, curve: YieldCurve, metric: str
) -> ProjectEvaluation:
    """Evaluate all scenarios and collect the chosen metric's distribution.

    The threshold basis is the weighted mean of the per-scenario total
    outlays (a single number when the negative flows are deterministic).
    """
    if metric not in METRICS:
        raise InputError(f"unknown metric {metric!r}, expected one of {METRICS}")
    results = evaluate_set(scenario_set, curve)
    samples = [
        r.npv if metric == "npv" else r.annualized_return for r in results
    ]
    return ProjectEvaluation(
        project_id=scenario_set.project_id,
        metric=metric,
        distribution=EmpiricalDistribution(samples, scenario_set.weights),
        basis_outlay=mean_basis_outlay(results, scenario_set.weights),
        horizon=scenario_set.horizon,
    )


def metric_threshold(
    project: ProjectEvaluation, hurdle: HurdleSpec, curve: YieldCurve
) -> tuple[float, ThresholdSet]:
    """The hurdle expressed on the project's metric scale."""
    ts = thresholds(hurdle, project.basis_outlay, curve, project.horizon)
    lam = ts.npv_star if project.metric == "npv" else ts.mu_star
    return lam, ts


@dataclass(frozen=True)
class RankingEntry:
    project_id: str
    threshold: float
    result: OmegaResult
    summary: SummaryStats
    accept: bool

    def to_dict(self) -> dict:
        return {
            "project_id": self.project_id,
            "threshold": self.threshold,
            "omega": self.result.omega,
            "call": self.result.call,
            "put": self.result.put,
            "accept": self.accept,
            "summary": {
                "mean": self.summary.mean,
                "median": self.summary.median,
                "std": self.summary.std_dev,
                "skewness": self.summary.skewness,
            },
        }


@dataclass(frozen=True)
class PairCrossings:
    """Refined hurdle brackets where two projects swap rank."""

    project_a: str
    project_b: str
    brackets: tuple[tuple[float, float], ...]

    def to_dict(self) -> dict:
        return {
            "project_a": self.project_a,
            "project_b": self.project_b,
            "brackets": [list(b) for b in self.brackets],
        }


@dataclass(frozen=True)
class RankingReport:
    hurdle: HurdleSpec
    metric: str
    entries: tuple[RankingEntry, ...]
    order: tuple[str, ...]
    excluded: tuple[str, ...]
    crossings: tuple[PairCrossings, ...] = ()

    def to_dict(self) -> dict:
        payload = {
            "hurdle": {"kind": self.hurdle.kind, "value": self.hurdle.value},
            "metric": self.metric,
            "entries": [e.to_dict() for e in self.entries],
            "order": list(self.order),
            "excluded": list(self.excluded),
        }
        if self.crossings:
            payload["crossings"] = [c.to_dict() for c in self.crossings]
        return payload


def _sort_key(entry: RankingEntry):
    # Best first: infinite Omega above all finite (tie-break on call), then
    # higher Omega, higher mean, lower std, project id.
    infinite = entry.result.is_infinite
    std = entry.summary.std_dev if entry.summary.std_dev is not None else 0.0
    return (
        0 if infinite else 1,
        -entry.result.call if infinite else 0.0,
        0.0 if infinite else -entry.result.omega,
        -entry.summary.mean,
        std,
        entry.project_id,
    )


def rank(
    projects: Sequence[ProjectEvaluation],
    hurdle: HurdleSpec,
    metric: str,
    curve: YieldCurve,
) -> RankingReport:
    """Rank projects by Omega at the hurdle, best first.

    A project is flagged accepted when its Omega is at least 1. Projects whose
    Omega is indeterminate at the threshold (no mass on either side) are
    excluded from the order with a warning.
    """
    if metric not in METRICS:
        raise InputError(f"unknown metric {metric!r}, expected one of {METRICS}")
    if not projects:
        raise InputError("need at least one project to rank")
    for p in projects:
        if p.metric != metric:
            raise InputError(
                f"project {p.project_id!r} was evaluated on metric {p.metric!r}, "
                f"but the ranking metric is {metric!r}"
            )
    ranked: list[RankingEntry] = []
    excluded: list[str] = []
    for p in projects:
        lam, _ = metric_threshold(p, hurdle, curve)
        result = omega(p.distribution, lam)
        entry = RankingEntry(
            project_id=p.project_id,
            threshold=lam,
            result=result,
            summary=summarize(p.distribution),
            accept=result.is_infinite or (not result.is_indeterminate and result.omega >= 1.0),
        )
        if result.is_indeterminate:
            warnings.warn(
                f"project {p.project_id!r}: Omega indeterminate at threshold {lam}; "
                "excluded from ranking",
                stacklevel=2,
            )
            excluded.append(p.project_id)
        else:
            ranked.append(entry)
    ranked.sort(key=_sort_key)
    return RankingReport(
        hurdle=hurdle,
        metric=metric,
        entries=tuple(ranked),
        order=tuple(e.project_id for e in ranked),
        excluded=tuple(excluded),
    )


@dataclass(frozen=True)
class HurdleCurvePoint:
    mu_star: float
    result: OmegaResult


def omega_vs_hurdle(
    project: ProjectEvaluation, curve: YieldCurve, mu_grid: Sequence[float]
) -> tuple[HurdleCurvePoint, ...]:
    """Omega along a grid of annualized-return hurdles mu*.

    For the npv metric each mu* is first converted to its NPV threshold on the
    project's outlay basis; either way the curve is nonincreasing in mu*.
    """
    if len(mu_grid) == 0:
        raise InputError("hurdle grid is empty")
    for lo, hi in zip(mu_grid, mu_grid[1:]):
        if not hi > lo:
            raise InputError(f"grid must be strictly increasing, got {lo} then {hi}")
    points = []
    for mu_star in mu_grid:
        lam, _ = metric_threshold(project, HurdleSpec("mu_star", mu_star), curve)
        points.append(HurdleCurvePoint(mu_star=mu_star, result=omega(project.distribution, lam)))
    return tuple(points)


def hurdle_crossings(
    project_a: ProjectEvaluation,
    project_b: ProjectEvaluation,
    curve: YieldCurve,
    mu_grid: Sequence[float],
) -> list[tuple[float, float]]:
    """Hurdle intervals (width <= grid step / 1024) where the pair's ranking flips."""

    def _eval(project: ProjectEvaluation):
        def at(mu_star: float) -> OmegaResult:
            lam, _ = metric_threshold(project, HurdleSpec("mu_star", mu_star), curve)
            return omega(project.distribution, lam)

        return at

    return crossing_on_grid(list(mu_grid), _eval(project_a), _eval(project_b))


def rank_with_crossings(
    projects: Sequence[ProjectEvaluation],
    hurdle: HurdleSpec,
    metric: str,
    curve: YieldCurve,
    mu_grid: Sequence[float],
) -> RankingReport:
    """rank() plus pairwise ranking-flip brackets over a shared mu* grid."""
    report = rank(projects, hurdle, metric, curve)
    pairs = []
    for i in range(len(projects)):
        for j in range(i + 1, len(projects)):
            brackets = hurdle_crossings(projects[i], projects[j], curve, mu_grid)
            pairs.append(
                PairCrossings(
                    project_a=projects[i].project_id,
                    project_b=projects[j].project_id,
                    brackets=tuple(brackets),
                )
            )
    return RankingReport(
        hurdle=report.hurdle,
        metric=report.metric,
        entries=report.entries,
        order=report.order,
        excluded=report.excluded,
        crossings=tuple(pairs),
    )


def write_ranking_csv(report: RankingReport, target: str | Path | IO[str]) -> None:
    """Tabular ranking: ``rank,project,omega,call,put,threshold,accept``."""

    def _write(handle: IO[str]) -> None:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["rank", "project", "omega", "call", "put", "threshold", "accept"])
        for position, entry in enumerate(report.entries, start=1):
            writer.writerow(
                [
                    position,
                    entry.project_id,
                    repr(entry.result.omega),
                    repr(entry.result.call),
                    repr(entry.result.put),
                    repr(entry.threshold),
                    entry.accept,
                ]
            )

    if isinstance(target, (str, Path)):
        with open(target, "w", newline="") as handle:
            _write(handle)
    else:
        _write(target)
