"""Command-line front door: simulate, evaluate, rank, omega-curve, radr-compare.

Exit status contract: 0 success, 1 computation-domain error, 2 configuration
or IO error (argparse errors included). Machine outputs (CSV/JSON) keep full
precision; only stdout applies display rounding.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .curves import YieldCurve
from .distributions import EmpiricalDistribution, summarize, write_omega_curve_csv, write_summary_csv
from .errors import DomainError, EngineError, InputError
from .metrics import HurdleSpec, evaluate_set, write_evaluation_csv
from .radr import MODE_CANONICAL, MODES, RadrInput, radr_valuation
from .ranking import (
    evaluate_project,
    omega_vs_hurdle,
    rank,
    rank_with_crossings,
    write_ranking_csv,
)
from .scenarios import (
    generate,
    generator_spec_from_dict,
    load_project,
    write_scenarios,
)
from . import __version__


def _parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"grid must be lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError as exc:
        raise InputError(f"grid must be numeric lo:hi:step, got {text!r}") from exc
    if step <= 0.0 or hi <= lo:
        raise InputError(f"grid needs hi > lo and step > 0, got {text!r}")
    count = int((hi - lo) / step + 1e-9) + 1
    return [lo + i * step for i in range(count)]


def _write_json(payload: dict, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2) + "\n")


def _percent(x: float) -> str:
    return f"{100.0 * x:.1f}%"


def _load_spec_file(path: Path):
    """Accept either a project descriptor with a generator block or a bare block."""
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: spec must be a JSON object")
    if "generator" in data:
        block = data["generator"]
        project_id = str(data.get("id", path.stem))
    elif "family" in data:
        block, project_id = data, path.stem
    else:
        raise InputError(f"{path}: no 'generator' block and no inline 'family' field")
    return generator_spec_from_dict(block), project_id


def _cmd_simulate(args: argparse.Namespace) -> int:
    spec, project_id = _load_spec_file(Path(args.spec))
    from dataclasses import replace

    if args.n is not None:
        spec = replace(spec, n_scenarios=args.n)
    if args.seed is not None:
        spec = replace(spec, seed=args.seed)
    scenario_set = generate(spec, project_id=project_id)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_scenarios(scenario_set, out)
    slot = spec.slot
    stats = summarize(
        EmpiricalDistribution([s.flows[slot] for s in scenario_set.scenarios])
    )
    skew = "n/a" if stats.skewness is None else f"{stats.skewness:.4f}"
    std = "n/a" if stats.std_dev is None else f"{stats.std_dev:.4f}"
    print(f"wrote {len(scenario_set)} scenarios to {out}")
    print(
        f"stochastic flow t={slot}: mean={stats.mean:.4f} std={std} skewness={skew}"
    )
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    scenario_set = load_project(Path(args.project))
    curve = YieldCurve.from_csv(args.curve)
    results = evaluate_set(scenario_set, curve)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_evaluation_csv(results, out_dir / "evaluation.csv")
    npv_stats = summarize(
        EmpiricalDistribution([r.npv for r in results], scenario_set.weights)
    )
    mu_stats = summarize(
        EmpiricalDistribution([r.annualized_return for r in results], scenario_set.weights)
    )
    write_summary_csv({"npv": npv_stats, "mu": mu_stats}, out_dir / "summary.csv")
    print(f"evaluated {len(results)} scenarios of {scenario_set.project_id!r}")
    npv_skew = "n/a" if npv_stats.skewness is None else f"{npv_stats.skewness:.2f}"
    mu_skew = "n/a" if mu_stats.skewness is None else f"{mu_stats.skewness:.2f}"
    npv_std = "n/a" if npv_stats.std_dev is None else f"{npv_stats.std_dev:.0f}"
    mu_std = "n/a" if mu_stats.std_dev is None else _percent(mu_stats.std_dev)
    print(
        f"npv: mean={npv_stats.mean:.0f} median={npv_stats.median:.0f} "
        f"std={npv_std} skewness={npv_skew}"
    )
    print(
        f"mu: mean={_percent(mu_stats.mean)} median={_percent(mu_stats.median)} "
        f"std={mu_std} skewness={mu_skew}"
    )
    return 0


def _hurdle_from_args(args: argparse.Namespace) -> HurdleSpec:
    if args.delta_mu is not None:
        return HurdleSpec("delta_mu", args.delta_mu)
    if args.mu_star is not None:
        return HurdleSpec("mu_star", args.mu_star)
    return HurdleSpec("npv_star", args.npv_star)


def _cmd_rank(args: argparse.Namespace) -> int:
    curve = YieldCurve.from_csv(args.curve)
    projects = [
        evaluate_project(load_project(Path(p)), curve, args.metric)
        for p in args.projects
    ]
    hurdle = _hurdle_from_args(args)
    if args.grid is not None:
        report = rank_with_crossings(
            projects, hurdle, args.metric, curve, _parse_grid(args.grid)
        )
    else:
        report = rank(projects, hurdle, args.metric, curve)
    _write_json(report.to_dict(), Path(args.out))
    if args.out_csv is not None:
        out_csv = Path(args.out_csv)
        out_csv.parent.mkdir(parents=True, exist_ok=True)
        write_ranking_csv(report, out_csv)
    for position, entry in enumerate(report.entries, start=1):
        verdict = "accept" if entry.accept else "reject"
        print(
            f"{position}. {entry.project_id}: omega={entry.result.omega:.3f} "
            f"({verdict}, threshold={entry.threshold:.4g})"
        )
    for pid in report.excluded:
        print(f"excluded (indeterminate omega): {pid}")
    print(f"wrote ranking report to {args.out}")
    return 0


def _cmd_omega_curve(args: argparse.Namespace) -> int:
    curve = YieldCurve.from_csv(args.curve)
    project = evaluate_project(load_project(Path(args.project)), curve, args.metric)
    grid = _parse_grid(args.grid)
    points = omega_vs_hurdle(project, curve, grid)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_omega_curve_csv([p.result for p in points], out)
    print(f"wrote {len(points)} omega-curve points for {project.project_id!r} to {out}")
    return 0


def _cmd_radr_compare(args: argparse.Namespace) -> int:
    scenario_set = load_project(Path(args.project))
    result = radr_valuation(
        RadrInput(
            scenario_set=scenario_set,
            riskless_rate=args.r,
            radr_rate=args.k,
            mode=args.mode,
        )
    )
    _write_json(result.to_dict(), Path(args.out))
    verdict = "accept" if result.accept else "reject"
    print(
        f"{scenario_set.project_id}: NPV(mean|k)={result.npv_at_k:.0f} "
        f"MIRR={_percent(result.mirr_at_k)} "
        f"mean NPV(r)={result.mean_npv_at_r:.0f} lambda={result.lambda_radr:.0f} "
        f"-> {verdict}"
    )
    print(f"wrote RADR report to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invomega",
        description=(
            "Evaluate risky investment projects against their riskless "
            "replication and rank them by the Omega measure."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="generate a scenario CSV from a generator spec")
    p.add_argument("--spec", required=True, help="JSON project descriptor or generator block")
    p.add_argument("--n", type=int, default=None, help="override scenario count")
    p.add_argument("--seed", type=int, default=None, help="override random seed")
    p.add_argument("--out", required=True, help="output scenario CSV path")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("evaluate", help="per-scenario metrics and distribution summaries")
    p.add_argument("--project", required=True, help="JSON project descriptor")
    p.add_argument("--curve", required=True, help="riskless curve CSV (tenor,rate)")
    p.add_argument("--out-dir", required=True, help="directory for evaluation.csv and summary.csv")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("rank", help="rank projects by Omega at a shared hurdle")
    p.add_argument("--projects", required=True, nargs="+", help="JSON project descriptors")
    p.add_argument("--curve", required=True, help="riskless curve CSV")
    hurdle = p.add_mutually_exclusive_group(required=True)
    hurdle.add_argument("--delta-mu", type=float, default=None, help="return premium over r_T")
    hurdle.add_argument("--mu-star", type=float, default=None, help="annualized return floor")
    hurdle.add_argument("--npv-star", type=float, default=None, help="NPV floor")
    p.add_argument("--metric", choices=["npv", "mu"], default="mu")
    p.add_argument("--grid", default=None, help="mu* grid lo:hi:step for crossing analysis")
    p.add_argument("--out", required=True, help="output JSON report")
    p.add_argument("--out-csv", default=None, help="optional tabular CSV report")
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("omega-curve", help="Omega along a grid of hurdle rates")
    p.add_argument("--project", required=True, help="JSON project descriptor")
    p.add_argument("--curve", required=True, help="riskless curve CSV")
    p.add_argument("--metric", choices=["npv", "mu"], default="mu")
    p.add_argument("--grid", required=True, help="mu* grid lo:hi:step")
    p.add_argument("--out", required=True, help="output CSV (threshold,call,put,omega)")
    p.set_defaults(func=_cmd_omega_curve)

    p = sub.add_parser("radr-compare", help="conventional valuation on mean flows")
    p.add_argument("--project", required=True, help="JSON project descriptor")
    p.add_argument("--r", type=float, required=True, help="flat riskless rate")
    p.add_argument("--k", type=float, required=True, help="risk-adjusted rate (k >= r)")
    p.add_argument("--mode", choices=list(MODES), default=MODE_CANONICAL)
    p.add_argument("--out", required=True, help="output JSON report")
    p.set_defaults(func=_cmd_radr_compare)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EngineError as exc:  # pragma: no cover - defensive
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
