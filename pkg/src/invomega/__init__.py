"""Risk profiling and Omega ranking of investment projects against riskless replication."""

__version__ = "0.1.0"

from .cashflows import (
    CashFlowScenario,
    ReplicationDecomposition,
    ScenarioSet,
    SplitStream,
    present_value,
    replicate,
    split,
)
from .curves import ForwardCurve, YieldCurve
from .distributions import (
    EmpiricalDistribution,
    OmegaResult,
    SummaryStats,
    crossing,
    crossing_on_grid,
    omega,
    omega_curve,
    summarize,
)
from .errors import (
    DomainError,
    EngineError,
    HorizonMismatchError,
    InputError,
    NonCanonicalFlowError,
    ReturnUndefinedError,
    ScenarioParseError,
    TenorOutOfRangeError,
    ZeroOutlayError,
)
from .metrics import (
    EvaluationResult,
    HurdleSpec,
    ThresholdSet,
    evaluate,
    evaluate_set,
    mirr,
    mu_from_npv,
    npv_from_mu,
    thresholds,
)
from .radr import (
    EquivalenceReport,
    RadrInput,
    RadrResult,
    equivalence_check,
    radr_valuation,
    vertical_average,
)
from .ranking import (
    ProjectEvaluation,
    RankingReport,
    evaluate_project,
    hurdle_crossings,
    omega_vs_hurdle,
    rank,
    rank_with_crossings,
)
from .scenarios import (
    GeneratorSpec,
    SeededStream,
    generate,
    load_project,
    load_scenarios,
    moment_match,
    write_scenarios,
)

__all__ = [
    "CashFlowScenario",
    "DomainError",
    "EmpiricalDistribution",
    "EngineError",
    "EquivalenceReport",
    "EvaluationResult",
    "ForwardCurve",
    "GeneratorSpec",
    "HorizonMismatchError",
    "HurdleSpec",
    "InputError",
    "NonCanonicalFlowError",
    "OmegaResult",
    "ProjectEvaluation",
    "RadrInput",
    "RadrResult",
    "RankingReport",
    "ReplicationDecomposition",
    "ReturnUndefinedError",
    "ScenarioParseError",
    "ScenarioSet",
    "SeededStream",
    "SplitStream",
    "SummaryStats",
    "TenorOutOfRangeError",
    "ThresholdSet",
    "YieldCurve",
    "ZeroOutlayError",
    "crossing",
    "crossing_on_grid",
    "equivalence_check",
    "evaluate",
    "evaluate_project",
    "evaluate_set",
    "generate",
    "hurdle_crossings",
    "load_project",
    "load_scenarios",
    "mirr",
    "moment_match",
    "mu_from_npv",
    "npv_from_mu",
    "omega",
    "omega_curve",
    "omega_vs_hurdle",
    "present_value",
    "radr_valuation",
    "rank",
    "rank_with_crossings",
    "replicate",
    "split",
    "summarize",
    "thresholds",
    "vertical_average",
    "write_scenarios",
]
