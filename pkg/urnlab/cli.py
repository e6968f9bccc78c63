"""
Command-line runner for urnlab
Exact solvers, cross-method agreement, Monte Carlo runs, parameter sweeps
and the paradox catalog, written to stdout as JSON, CSV or a plain table.
"""

import argparse
import csv
import io
import json
import logging
import sys
import traceback
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from . import config
from .exact_core import (
    ConditioningError,
    DomainError,
    EstimationError,
    ExactFraction,
    UrnLabError,
    fraction_str,
    rat,
    to_decimal,
)
from .induction_engine import inductive_answer
from .monte_carlo import (
    MODEL_ALIASES,
    FrequencyTable,
    ModelSpec,
    SimulationReport,
    report_from_counts,
    run_counts,
    table_from_counts,
)
from .paradox_catalog import SCENARIOS, evaluate, get_scenario
from .symmetry_model import symmetry_answer
from .urn_models import (
    RED,
    conditional_ratio_answer,
    next_red_given_prefix,
    parse_draws,
    posterior_given_prefix,
    uniform_prior,
    uniform_prior_answer,
    weighted_prior_answer,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

# ============================================================
# Data Models
# ============================================================

class ResultValue(BaseModel):
    """An exact value with its 12-significant-digit approximation"""
    model_config = ConfigDict(extra="forbid", frozen=True)
    exact: ExactFraction
    decimal: float
    approximate: bool = True

    @classmethod
    def of(cls, value: Fraction) -> "ResultValue":
        return cls(exact=value, decimal=float(to_decimal(value, config.DECIMAL_DIGITS)))


class OutputRecord(BaseModel):
    """Everything one command reports"""
    model_config = ConfigDict(extra="forbid", frozen=True)
    command: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    results: Dict[str, ResultValue] = Field(default_factory=dict)
    checks: Dict[str, bool] = Field(default_factory=dict)
    simulation: Optional[SimulationReport] = None
    frequencies: Optional[FrequencyTable] = None
    table: List[Dict[str, Any]] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

# ============================================================
# Solvers
# ============================================================

SOLVERS: Dict[str, Callable[[int], Fraction]] = {
    "uniform-prior": uniform_prior_answer,
    "weighted-prior": weighted_prior_answer,
    "conditional": lambda n: conditional_ratio_answer(n)[2],
    "symmetry": symmetry_answer,
    "inductive": inductive_answer,
}

# The uniform prior is the wrong model; it is reported but not compared
AGREEING_METHODS = ("weighted-prior", "conditional", "symmetry", "inductive")

EXPECTED_ANSWERS: Dict[str, Fraction] = {
    "uniform-prior": rat(1, 2),
    "weighted-prior": rat(2, 3),
    "conditional": rat(2, 3),
    "symmetry": rat(2, 3),
    "inductive": rat(2, 3),
}


def _methods(method: str) -> List[str]:
    return list(SOLVERS) if method == "all" else [method]


def _value_row(name: str, value: Fraction) -> Dict[str, Any]:
    rv = ResultValue.of(value)
    return {"name": name, "exact": fraction_str(value), "decimal": rv.decimal}

# ============================================================
# Command Handlers
# ============================================================

def cmd_exact(n: int, method: str = "all") -> OutputRecord:
    results = {}
    table = []
    for name in _methods(method):
        if name == "conditional":
            p_first, p_both, answer = conditional_ratio_answer(n)
            extra = {"conditional.first-red": p_first, "conditional.both-red": p_both}
        else:
            answer = SOLVERS[name](n)
            extra = {}
        for key, value in {name: answer, **extra}.items():
            results[key] = ResultValue.of(value)
            table.append(_value_row(key, value))

    checks = {}
    if method == "all":
        answers = {results[m].exact for m in AGREEING_METHODS}
        checks["agreement"] = len(answers) == 1
    return OutputRecord(
        command="exact",
        parameters={"n": n, "method": method},
        results=results,
        checks=checks,
        table=table,
    )


def cmd_prefix(n: int, prefix: str, posterior: bool = False) -> OutputRecord:
    draws = parse_draws(prefix)
    answer = next_red_given_prefix(n, draws)
    reds = sum(1 for c in draws if c == RED)
    results = {"next-red": ResultValue.of(answer)}
    table = [_value_row("next-red", answer)]

    if posterior:
        post = posterior_given_prefix(uniform_prior(n), draws)
        for x in range(0, n + 1):
            key = f"posterior[x={x}]"
            results[key] = ResultValue.of(post.weight(x))
            table.append(_value_row(key, post.weight(x)))

    return OutputRecord(
        command="prefix",
        parameters={"n": n, "prefix": "".join(draws), "posterior": posterior},
        results=results,
        checks={"rule-of-succession": answer == rat(reds + 1, len(draws) + 2)},
        table=table,
    )


def cmd_simulate(model: str, n: int, trials: int, seed: int, z_threshold: float,
                 workers: int = 1) -> OutputRecord:
    spec = ModelSpec(kind=model, n=n)
    counts = run_counts(spec, trials, seed, workers)
    report = report_from_counts(spec, counts, seed, z_threshold)
    checks = {
        "estimate": report.verdict == "pass",
        "conditioning-rate": report.conditioning_verdict == "pass",
    }
    freq = None
    if spec.kind == "uniform-composition-two-draws":
        freq = table_from_counts(spec, counts, seed)
        checks["chi-square"] = freq.verdict == "pass"

    # exact fractions come out of model_dump already as "p/q" strings
    table = [{"field": key, "value": value}
             for key, value in report.model_dump(exclude={"model"}).items()]
    if freq is not None:
        for label, count in freq.counts.items():
            table.append({"field": f"count[{label}]", "value": count})
        table.append({"field": "chi_square", "value": freq.chi_square})
        table.append({"field": "chi_square_critical", "value": freq.critical_value})

    return OutputRecord(
        command="simulate",
        parameters={"model": spec.kind, "n": n, "trials": trials, "seed": seed,
                    "z_threshold": report.z_threshold, "workers": workers},
        results={"estimate-target": ResultValue.of(report.exact_target)},
        checks=checks,
        simulation=report,
        frequencies=freq,
        table=table,
    )


def cmd_sweep(n_min: int, n_max: int, method: str) -> OutputRecord:
    if not 2 <= n_min <= n_max:
        raise DomainError(f"sweep range needs 2 <= min <= max, got {n_min}..{n_max}")
    table = []
    checks = {}
    for name in _methods(method):
        constant = True
        for n in range(n_min, n_max + 1):
            value = SOLVERS[name](n)
            constant = constant and value == EXPECTED_ANSWERS[name]
            rv = ResultValue.of(value)
            table.append({"n": n, "method": name, "exact": fraction_str(value), "decimal": rv.decimal})
        checks[f"{name}-constant"] = constant
        logger.debug("sweep %s over %d..%d constant=%s", name, n_min, n_max, constant)
    return OutputRecord(
        command="sweep",
        parameters={"min": n_min, "max": n_max, "method": method},
        checks=checks,
        table=table,
    )


def cmd_catalog(scenario: str) -> OutputRecord:
    s = get_scenario(scenario)
    answer = evaluate(s)
    table = []
    for outcome in s.outcome_space:
        table.append({
            "label": outcome.label,
            "probability": fraction_str(outcome.probability),
            "decimal": ResultValue.of(outcome.probability).decimal,
            "condition": s.conditioning_event(outcome.label),
            "target": s.target_event(outcome.label),
        })
    return OutputRecord(
        command="catalog",
        parameters={"scenario": scenario, "description": s.description},
        results={"answer": ResultValue.of(answer)},
        table=table,
    )

# ============================================================
# Output
# ============================================================

def render_json(record: OutputRecord) -> str:
    return record.model_dump_json(indent=2) + "\n"


def render_csv(record: OutputRecord) -> str:
    buf = io.StringIO()
    if record.table:
        writer = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
        header = list(record.table[0])
        writer.writerow(header)
        for row in record.table:
            writer.writerow([row.get(col, "") for col in header])
    return buf.getvalue()


def render_table(record: OutputRecord) -> str:
    lines = [f"{record.command}: " + ", ".join(f"{k}={v}" for k, v in record.parameters.items())]
    if record.table:
        header = list(record.table[0])
        cells = [[str(row.get(col, "")) for col in header] for row in record.table]
        widths = [max(len(col), *(len(r[i]) for r in cells)) for i, col in enumerate(header)]
        lines.append("  ".join(col.ljust(w) for col, w in zip(header, widths)))
        lines.append("  ".join("-" * w for w in widths))
        lines.extend("  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in cells)
    listed = {row.get("name") for row in record.table}
    for name, result in record.results.items():
        if name not in listed:
            lines.append(f"{name}: {fraction_str(result.exact)} (~{result.decimal})")
    for name, ok in record.checks.items():
        lines.append(f"{'✓' if ok else '✗'} {name}")
    return "\n".join(lines) + "\n"


RENDERERS = {"json": render_json, "csv": render_csv, "table": render_table}

# ============================================================
# Argument parsing
# ============================================================

def _urn_size(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 2:
        raise argparse.ArgumentTypeError(f"urn size must be at least 2, got {n}")
    return n


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value <= config.SEED_MAX:
        raise argparse.ArgumentTypeError(f"seed must be a 64-bit unsigned integer, got {value}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=config.OUTPUT_FORMATS, default=config.DEFAULT_FORMAT)
    common.add_argument("--verbose", action="store_true", help="debug logging on stderr")

    parser = argparse.ArgumentParser(
        prog="urnlab",
        description="Exact and simulated answers to the random-composition urn puzzle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", parents=[common], help="run the exact solvers")
    p.add_argument("--n", type=_urn_size, default=100)
    p.add_argument("--method", choices=[*SOLVERS, "all"], default="all")

    p = sub.add_parser("prefix", parents=[common], help="next-red probability after observed draws")
    p.add_argument("--n", type=_urn_size, default=100)
    p.add_argument("--prefix", default="", help="observed colours, e.g. RRG")
    p.add_argument("--posterior", action="store_true", help="also report the posterior over x")

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo check of a sampling process")
    p.add_argument("--model", choices=list(MODEL_ALIASES), required=True)
    p.add_argument("--n", type=_urn_size, default=100)
    p.add_argument("--trials", type=_positive_int, default=None)
    p.add_argument("--seed", type=_seed, default=None)
    p.add_argument("--z-threshold", type=_positive_float, default=None)
    p.add_argument("--workers", type=_positive_int, default=None)

    p = sub.add_parser("sweep", parents=[common], help="exact answers over a range of n")
    p.add_argument("--min", dest="n_min", type=_urn_size, required=True)
    p.add_argument("--max", dest="n_max", type=_urn_size, required=True)
    p.add_argument("--method", choices=[*SOLVERS, "all"], default="all")

    p = sub.add_parser("catalog", parents=[common], help="classical paradox scenarios")
    p.add_argument("scenario", choices=list(SCENARIOS))

    return parser


def _dispatch(args: argparse.Namespace) -> OutputRecord:
    if args.command == "exact":
        return cmd_exact(args.n, args.method)
    if args.command == "prefix":
        return cmd_prefix(args.n, args.prefix, args.posterior)
    if args.command == "simulate":
        return cmd_simulate(
            args.model,
            args.n,
            trials=config.resolve_trials(args.trials),
            seed=config.resolve_seed(args.seed),
            z_threshold=config.resolve_z_threshold(args.z_threshold),
            workers=config.resolve_workers(args.workers),
        )
    if args.command == "sweep":
        return cmd_sweep(args.n_min, args.n_max, args.method)
    return cmd_catalog(args.scenario)

# ============================================================
# Main Entry Point
# ============================================================

def _error(command: str, message: str) -> str:
    return json.dumps({"command": command, "error": message}, ensure_ascii=False) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the CLI; returns the exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse already printed the usage message
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if (config.DEBUG or args.verbose) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    errors, warnings = config.validate_config()
    for warning in warnings:
        logger.warning(warning)
    if errors:
        sys.stdout.write(_error(args.command, "; ".join(errors)))
        return EXIT_USAGE

    try:
        record = _dispatch(args)
    except EstimationError as e:
        sys.stdout.write(_error(args.command, str(e)))
        return EXIT_CHECK_FAILED
    except (DomainError, ConditioningError) as e:
        sys.stdout.write(_error(args.command, str(e)))
        return EXIT_USAGE
    except UrnLabError as e:
        sys.stdout.write(_error(args.command, str(e)))
        return EXIT_CHECK_FAILED
    except Exception as e:
        logger.debug(traceback.format_exc())
        sys.stdout.write(_error(args.command, f"internal error: {e}"))
        return EXIT_CHECK_FAILED

    sys.stdout.write(RENDERERS[args.format](record))
    return EXIT_OK if record.passed else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
