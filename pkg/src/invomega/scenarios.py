"""Scenario loading and reproducible synthetic scenario generation.

Synthetic sets fill one stochastic slot of a fixed flow template with draws
from a distribution moment-matched to a target mean/std/skewness. Randomness
is counter-based: draw i is a pure function of (seed, i), so output never
depends on evaluation order, chunking or worker count.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import IO, Sequence

import numpy as np
from scipy.optimize import brentq
from scipy.special import ndtri

from .cashflows import CashFlowScenario, ScenarioSet
from .errors import DomainError, HorizonMismatchError, InputError, ScenarioParseError

FAMILIES = ("shifted_lognormal", "mirrored_shifted_lognormal", "normal", "discrete")

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def _finalize(z: np.ndarray) -> np.ndarray:
    # SplitMix64 output mixing
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


class SeededStream:
    """Counter-based random stream: value(i, draw) depends only on (seed, i, draw)."""

    def __init__(self, seed: int):
        if not isinstance(seed, int):
            raise InputError(f"seed must be an integer, got {type(seed).__name__}")
        self.seed = seed
        self._key = np.uint64(seed % 2**64)

    def raw(self, indices: Sequence[int] | np.ndarray, draw: int = 0) -> np.ndarray:
        idx = np.asarray(indices, dtype=np.uint64)
        substream = _finalize(self._key + (idx + np.uint64(1)) * _GOLDEN)
        offset = np.uint64((draw + 1) * 0x9E3779B97F4A7C15 % 2**64)
        return _finalize(substream + offset)

    def uniforms(self, indices: Sequence[int] | np.ndarray, draw: int = 0) -> np.ndarray:
        """Uniform draws strictly inside (0, 1)."""
        bits = self.raw(indices, draw) >> np.uint64(11)
        return (bits.astype(np.float64) + 0.5) * 2.0**-53

    def normals(self, indices: Sequence[int] | np.ndarray, draw: int = 0) -> np.ndarray:
        return ndtri(self.uniforms(indices, draw))


@dataclass(frozen=True)
class ShiftedLognormal:
    """shift + exp(mu_log + sigma_log * Z); mirror_center set when reflected.

    A non-None mirror_center produces the negatively skewed variant
    2*mirror_center - X, where the center equals the matched mean.
    """

    shift: float
    mu_log: float
    sigma_log: float
    mirror_center: float | None = None

    def analytic_moments(self) -> tuple[float, float, float]:
        w = math.exp(self.sigma_log**2)
        mean = self.shift + math.exp(self.mu_log) * math.sqrt(w)
        std = math.exp(self.mu_log) * math.sqrt(w * (w - 1.0))
        skew = (w + 2.0) * math.sqrt(w - 1.0)
        if self.mirror_center is None:
            return mean, std, skew
        return 2.0 * self.mirror_center - mean, std, -skew

    def sample(self, stream: SeededStream, indices: Sequence[int] | np.ndarray) -> np.ndarray:
        z = stream.normals(indices)
        base = self.shift + np.exp(self.mu_log + self.sigma_log * z)
        if self.mirror_center is None:
            return base
        return 2.0 * self.mirror_center - base


@dataclass(frozen=True)
class MatchedNormal:
    mean: float
    std: float

    def analytic_moments(self) -> tuple[float, float, float]:
        return self.mean, self.std, 0.0

    def sample(self, stream: SeededStream, indices: Sequence[int] | np.ndarray) -> np.ndarray:
        return self.mean + self.std * stream.normals(indices)


@dataclass(frozen=True)
class MatchedTwoPoint:
    """Two-point distribution; the unique such match for any target skewness."""

    low: float
    high: float
    p_high: float

    def analytic_moments(self) -> tuple[float, float, float]:
        p = self.p_high
        mean = p * self.high + (1.0 - p) * self.low
        std = math.sqrt(p * (1.0 - p)) * (self.high - self.low)
        skew = (1.0 - 2.0 * p) / math.sqrt(p * (1.0 - p))
        return mean, std, skew

    def sample(self, stream: SeededStream, indices: Sequence[int] | np.ndarray) -> np.ndarray:
        u = stream.uniforms(indices)
        return np.where(u < self.p_high, self.high, self.low)


MatchedDistribution = ShiftedLognormal | MatchedNormal | MatchedTwoPoint


def _lognormal_w(skew_abs: float) -> float:
    """Solve (w+2)*sqrt(w-1) = skew for w = exp(sigma_log^2) by bracketed root finding."""
    def f(w: float) -> float:
        return (w + 2.0) * math.sqrt(w - 1.0) - skew_abs

    lo, hi = 1.0 + 1e-15, 2.0
    while f(hi) < 0.0:
        hi *= 2.0
        if hi > 1e12:
            raise DomainError(f"no lognormal solution for skewness {skew_abs}")
    return brentq(f, lo, hi, xtol=1e-300, rtol=8.9e-16, maxiter=200)


def moment_match(family: str, mean: float, std: float, skew: float) -> MatchedDistribution:
    """Parameters of ``family`` whose analytic mean/std/skewness equal the targets."""
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}, expected one of {FAMILIES}")
    for name, value in (("mean", mean), ("std", std), ("skew", skew)):
        if not math.isfinite(value):
            raise InputError(f"target {name} must be finite, got {value!r}")
    if std <= 0.0:
        raise InputError(f"target std must be positive, got {std}")

    if family in ("shifted_lognormal", "mirrored_shifted_lognormal"):
        if skew == 0.0:
            raise InputError(
                "lognormal families need nonzero skewness (use family 'normal' instead)"
            )
        w = _lognormal_w(abs(skew))
        sigma_log = math.sqrt(math.log(w))
        scale = std / math.sqrt(w * (w - 1.0))
        shift = mean - scale * math.sqrt(w)
        return ShiftedLognormal(
            shift=shift,
            mu_log=math.log(scale),
            sigma_log=sigma_log,
            mirror_center=mean if skew < 0.0 else None,
        )
    if family == "normal":
        if skew != 0.0:
            raise InputError(f"family 'normal' requires zero skewness, got {skew}")
        return MatchedNormal(mean=mean, std=std)
    # discrete: two-point distribution with exact first three moments
    q = skew / math.sqrt(4.0 + skew**2)
    p_high = (1.0 - q) / 2.0
    high = mean + std * math.sqrt((1.0 - p_high) / p_high)
    low = mean - std * math.sqrt(p_high / (1.0 - p_high))
    return MatchedTwoPoint(low=low, high=high, p_high=p_high)


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for a synthetic scenario set with one stochastic flow."""

    family: str
    target_mean: float
    target_std: float
    target_skewness: float
    flow_template: tuple[float | None, ...]
    n_scenarios: int
    seed: int

    def __post_init__(self) -> None:
        template = tuple(
            None if f is None else float(f) for f in self.flow_template
        )
        if len(template) < 2:
            raise InputError("template needs entries for t=0..T with T >= 1")
        slots = [t for t, f in enumerate(template) if f is None]
        if len(slots) != 1:
            raise InputError(
                f"template must have exactly one stochastic slot (null), got {len(slots)}"
            )
        if slots[0] == 0:
            raise InputError("the stochastic slot must be at a tenor t >= 1")
        for t, f in enumerate(template):
            if f is not None and not math.isfinite(f):
                raise InputError(f"template flow at t={t} is not finite: {f!r}")
        if not isinstance(self.n_scenarios, int) or self.n_scenarios < 1:
            raise InputError(f"n_scenarios must be a positive integer, got {self.n_scenarios!r}")
        if not isinstance(self.seed, int):
            raise InputError(f"seed must be an integer, got {self.seed!r}")
        object.__setattr__(self, "flow_template", template)

    @property
    def slot(self) -> int:
        return self.flow_template.index(None)

    @property
    def horizon(self) -> int:
        return len(self.flow_template) - 1


def generator_spec_from_dict(block: dict) -> GeneratorSpec:
    """Build a GeneratorSpec from a JSON generator block, naming bad fields."""
    if not isinstance(block, dict):
        raise InputError("generator block must be a JSON object")
    required = ("family", "mean", "std", "skew", "template", "n", "seed")
    for key in required:
        if key not in block:
            raise InputError(f"generator block missing field '{key}'")
    unknown = set(block) - set(required)
    if unknown:
        raise InputError(f"generator block has unknown fields {sorted(unknown)}")
    family = block["family"]
    if family not in FAMILIES:
        raise InputError(f"field 'family': unknown family {family!r}, expected one of {FAMILIES}")
    template = block["template"]
    if not isinstance(template, list):
        raise InputError("field 'template': must be a list with one null slot")
    if not isinstance(block["n"], int):
        raise InputError(f"field 'n': must be an integer, got {block['n']!r}")
    if not isinstance(block["seed"], int):
        raise InputError(f"field 'seed': must be an integer, got {block['seed']!r}")
    try:
        return GeneratorSpec(
            family=family,
            target_mean=float(block["mean"]),
            target_std=float(block["std"]),
            target_skewness=float(block["skew"]),
            flow_template=tuple(template),
            n_scenarios=block["n"],
            seed=block["seed"],
        )
    except (TypeError, ValueError) as exc:
        raise InputError(f"generator block: {exc}") from exc


def generate(spec: GeneratorSpec, project_id: str = "generated") -> ScenarioSet:
    """Deterministically generate the scenario set described by ``spec``."""
    matched = moment_match(
        spec.family, spec.target_mean, spec.target_std, spec.target_skewness
    )
    stream = SeededStream(spec.seed)
    samples = matched.sample(stream, np.arange(spec.n_scenarios, dtype=np.uint64))
    template = list(spec.flow_template)
    slot = spec.slot
    scenarios = []
    for x in samples.tolist():
        flows = template.copy()
        flows[slot] = x
        scenarios.append(CashFlowScenario(tuple(flows)))
    return ScenarioSet.uniform(project_id, scenarios)


def load_scenarios(
    path: str | Path, horizon: int | None = None, project_id: str | None = None
) -> ScenarioSet:
    """Load a scenario CSV (header ``t0,...,tT`` with optional leading ``weight``)."""
    path = Path(path)
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise ScenarioParseError(f"{path}: empty file")
        header = [h.strip() for h in header]
        has_weights = bool(header) and header[0] == "weight"
        flow_names = header[1:] if has_weights else header
        expected = [f"t{i}" for i in range(len(flow_names))]
        if not flow_names or flow_names != expected:
            raise ScenarioParseError(
                f"{path}: header must be {'weight,' if has_weights else ''}t0,...,tT, "
                f"got {','.join(header)}"
            )
        file_horizon = len(flow_names) - 1
        if horizon is not None and file_horizon != horizon:
            raise HorizonMismatchError(
                f"{path}: file horizon {file_horizon} does not match expected {horizon}"
            )
        n_cols = len(header)
        scenarios: list[CashFlowScenario] = []
        weights: list[float] = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != n_cols:
                raise ScenarioParseError(
                    f"{path}: row {lineno}: expected {n_cols} columns, got {len(row)}"
                )
            try:
                values = [float(cell) for cell in row]
            except ValueError:
                bad = next(c for c in row if not _is_float(c))
                raise ScenarioParseError(
                    f"{path}: row {lineno}: non-numeric value {bad!r}"
                ) from None
            if has_weights:
                weights.append(values[0])
                values = values[1:]
            scenarios.append(CashFlowScenario(tuple(values)))
    if not scenarios:
        raise ScenarioParseError(f"{path}: no scenario rows")
    pid = project_id if project_id is not None else path.stem
    if has_weights:
        return ScenarioSet(project_id=pid, scenarios=tuple(scenarios), weights=tuple(weights))
    return ScenarioSet.uniform(pid, scenarios)


def _is_float(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def write_scenarios(scenario_set: ScenarioSet, target: str | Path | IO[str]) -> None:
    """Write the standard scenario CSV (weight column only when non-uniform)."""
    n = len(scenario_set)
    uniform = all(w == 1.0 / n for w in scenario_set.weights)

    def _write(handle: IO[str]) -> None:
        writer = csv.writer(handle, lineterminator="\n")
        names = [f"t{i}" for i in range(scenario_set.horizon + 1)]
        writer.writerow(names if uniform else ["weight"] + names)
        for scenario, weight in zip(scenario_set.scenarios, scenario_set.weights):
            flows = [repr(f) for f in scenario.flows]
            writer.writerow(flows if uniform else [repr(weight)] + flows)

    if isinstance(target, (str, Path)):
        with open(target, "w", newline="") as handle:
            _write(handle)
    else:
        _write(target)


def load_project(
    path: str | Path,
    n_override: int | None = None,
    seed_override: int | None = None,
) -> ScenarioSet:
    """Load a project descriptor JSON and return its scenario set.

    The descriptor carries ``id``, ``horizon`` and either ``scenario_file``
    (resolved relative to the descriptor) or an inline ``generator`` block.
    Overrides only make sense for generated projects.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: project descriptor must be a JSON object")
    if "id" not in data:
        raise InputError(f"{path}: missing field 'id'")
    if "horizon" not in data:
        raise InputError(f"{path}: missing field 'horizon'")
    project_id = str(data["id"])
    horizon = data["horizon"]
    if not isinstance(horizon, int) or horizon < 1:
        raise InputError(f"{path}: field 'horizon' must be a positive integer")
    has_file = "scenario_file" in data
    has_generator = "generator" in data
    if has_file == has_generator:
        raise InputError(f"{path}: need exactly one of 'scenario_file' or 'generator'")
    if has_file:
        if n_override is not None or seed_override is not None:
            raise InputError(
                f"{path}: n/seed overrides only apply to generated projects"
            )
        scenario_path = (path.parent / data["scenario_file"]).resolve()
        return load_scenarios(scenario_path, horizon=horizon, project_id=project_id)
    spec = generator_spec_from_dict(data["generator"])
    if spec.horizon != horizon:
        raise HorizonMismatchError(
            f"{path}: template horizon {spec.horizon} does not match 'horizon' {horizon}"
        )
    if n_override is not None:
        spec = replace(spec, n_scenarios=n_override)
    if seed_override is not None:
        spec = replace(spec, seed=seed_override)
    return generate(spec, project_id=project_id)
