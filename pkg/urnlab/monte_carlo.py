"""
Monte Carlo verification
Replays each sampling process literally, trial by trial, and checks the
empirical frequencies against the exact solvers.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Dict, List, Literal, NamedTuple, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy import stats

from . import config
from .counter_rng import bounded_integers, check_seed
from .exact_core import DomainError, EstimationError, ExactFraction, binomial, sum_integers
from .induction_engine import ordered_distribution
from .symmetry_model import symmetry_answer, triangular_unrank
from .urn_models import conditional_ratio_answer, weighted_prior_answer

logger = logging.getLogger(__name__)

# ============================================================
# Data Models
# ============================================================

ModelKind = Literal["uniform-composition-two-draws", "weighted-red-pick", "symmetry-three-step"]

MODEL_ALIASES: Dict[str, ModelKind] = {
    "uniform-composition-two-draws": "uniform-composition-two-draws",
    "uniform-composition": "uniform-composition-two-draws",
    "weighted-red-pick": "weighted-red-pick",
    "weighted": "weighted-red-pick",
    "symmetry-three-step": "symmetry-three-step",
    "symmetry": "symmetry-three-step",
}

Verdict = Literal["pass", "fail"]
ORDERED_LABELS = ("GG", "GR", "RG", "RR")


class ModelSpec(BaseModel):
    """One sampling process and its urn size"""
    model_config = ConfigDict(extra="forbid", frozen=True)
    kind: ModelKind
    n: int = Field(default=100)

    @field_validator("kind", mode="before")
    @classmethod
    def _resolve_alias(cls, value):
        return MODEL_ALIASES.get(value, value)

    @field_validator("n")
    @classmethod
    def _check_n(cls, value):
        if value < 2:
            raise ValueError(f"urn size must be at least 2, got {value}")
        return value


class TrialOutcome(BaseModel):
    """What one trial drew and how it counts"""
    model_config = ConfigDict(extra="forbid", frozen=True)
    trial_index: int
    conditioned: bool
    success: bool
    first_red: bool
    second_red: bool
    draws: Dict[str, int] = Field(default_factory=dict)


class BlockCounts(NamedTuple):
    """Integer tallies for a set of trial indices; merging is plain addition"""
    trials: int = 0
    conditioned: int = 0
    successes: int = 0
    gg: int = 0
    gr: int = 0
    rg: int = 0
    rr: int = 0

    def merge(self, other: "BlockCounts") -> "BlockCounts":
        return BlockCounts(*(a + b for a, b in zip(self, other)))

    def ordered(self) -> Dict[str, int]:
        return {"GG": self.gg, "GR": self.gr, "RG": self.rg, "RR": self.rr}


class SimulationReport(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)
    model: ModelSpec
    seed: int
    trials: int
    conditioning_hits: int
    successes: int
    estimate: float
    exact_target: ExactFraction
    standard_error: float
    z_score: float
    z_threshold: float
    verdict: Verdict
    conditioning_rate: float
    conditioning_target: ExactFraction
    conditioning_z: float
    conditioning_verdict: Verdict

    @property
    def passed(self) -> bool:
        return self.verdict == "pass" and self.conditioning_verdict == "pass"


class FrequencyTable(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)
    model: ModelSpec
    seed: int
    trials: int
    counts: Dict[str, int]
    frequencies: Dict[str, float]
    expected: Dict[str, ExactFraction]
    chi_square: float
    p_value: float
    degrees_of_freedom: int
    critical_value: float
    verdict: Verdict


class TrialStream(BaseModel):
    """Trials of one model read off in order; trial i only ever depends on (seed, i)"""
    model_config = ConfigDict(extra="forbid")
    seed: int
    model: ModelSpec
    trial_index: int = 0

    def take(self, count: int) -> List[TrialOutcome]:
        outcomes = [run_trial(self.model, self.seed, i)
                    for i in range(self.trial_index, self.trial_index + count)]
        self.trial_index += count
        return outcomes

# ============================================================
# Sampling processes
# ============================================================

# Independent streams per random quantity within a trial
STREAM_FIRST = 0
STREAM_SECOND = 1
STREAM_THIRD = 2


def _sample_uniform_composition(n, seed, idx):
    x = bounded_integers(seed, idx, STREAM_FIRST, n + 1)
    # balls 0..x-1 are red
    first = bounded_integers(seed, idx, STREAM_SECOND, n)
    first_red = first < x
    # position among the n-1 balls left
    second = bounded_integers(seed, idx, STREAM_THIRD, n - 1)
    second_red = second < x - first_red.astype(np.int64)
    draws = {"x": x, "first": first, "second": second}
    return first_red, first_red, second_red, draws


def _sample_weighted_red_pick(n, seed, idx):
    red_rank = bounded_integers(seed, idx, STREAM_FIRST, int(sum_integers(n)))
    x, _ = triangular_unrank(n, red_rank)
    # the chosen red ball is gone: x-1 reds among n-1 balls
    second = bounded_integers(seed, idx, STREAM_SECOND, n - 1)
    second_red = second < x - 1
    first_red = np.ones(idx.shape[0], dtype=bool)
    draws = {"x": x, "red_rank": red_rank, "second": second}
    return first_red, first_red, second_red, draws


def _sample_symmetry_three_step(n, seed, idx):
    pair_rank = bounded_integers(seed, idx, STREAM_FIRST, int(binomial(n + 1, 2)))
    j, i = triangular_unrank(n, pair_rank)
    u = bounded_integers(seed, idx, STREAM_SECOND, n - 1)
    # uniform on {1..n} without j
    k = u + 1 + (u + 1 >= j).astype(np.int64)
    second_red = k > i
    first_red = np.ones(idx.shape[0], dtype=bool)
    draws = {"i": i, "j": j, "k": k}
    return first_red, first_red, second_red, draws


_SAMPLERS = {
    "uniform-composition-two-draws": _sample_uniform_composition,
    "weighted-red-pick": _sample_weighted_red_pick,
    "symmetry-three-step": _sample_symmetry_three_step,
}


def _sample(model: ModelSpec, seed: int, idx: np.ndarray):
    check_seed(seed)
    return _SAMPLERS[model.kind](model.n, seed, idx)


def run_trial(model: ModelSpec, seed: int, i: int) -> TrialOutcome:
    if i < 0:
        raise DomainError(f"trial index must be non-negative, got {i}")
    conditioned, first_red, second_red, draws = _sample(model, seed, np.array([i], dtype=np.uint64))
    return TrialOutcome(
        trial_index=i,
        conditioned=bool(conditioned[0]),
        success=bool(conditioned[0] and second_red[0]),
        first_red=bool(first_red[0]),
        second_red=bool(second_red[0]),
        draws={name: int(values[0]) for name, values in draws.items()},
    )


def simulate_block(model: ModelSpec, seed: int, start: int, stop: int) -> BlockCounts:
    """Tallies for trial indices start..stop-1"""
    if not 0 <= start <= stop:
        raise DomainError(f"bad trial range {start}..{stop}")
    if start == stop:
        return BlockCounts()
    idx = np.arange(start, stop, dtype=np.uint64)
    conditioned, first_red, second_red, _ = _sample(model, seed, idx)
    first_green = ~first_red
    second_green = ~second_red
    return BlockCounts(
        trials=stop - start,
        conditioned=int(np.count_nonzero(conditioned)),
        successes=int(np.count_nonzero(conditioned & second_red)),
        gg=int(np.count_nonzero(first_green & second_green)),
        gr=int(np.count_nonzero(first_green & second_red)),
        rg=int(np.count_nonzero(first_red & second_green)),
        rr=int(np.count_nonzero(first_red & second_red)),
    )


def _block_task(args) -> BlockCounts:
    model, seed, start, stop = args
    return simulate_block(model, seed, start, stop)


def run_counts(model: ModelSpec, trials: int, seed: int, workers: int = 1,
               chunk_size: Optional[int] = None) -> BlockCounts:
    """All trials 0..trials-1, chunked, optionally across a process pool"""
    if trials < 1:
        raise DomainError(f"trials must be positive, got {trials}")
    if workers < 1:
        raise DomainError(f"workers must be positive, got {workers}")
    chunk_size = chunk_size or config.CHUNK_SIZE
    tasks = [(model, seed, start, min(start + chunk_size, trials))
             for start in range(0, trials, chunk_size)]

    total = BlockCounts()
    if workers == 1 or len(tasks) == 1:
        for task in tasks:
            total = total.merge(_block_task(task))
            logger.debug("%s: %d/%d trials", model.kind, task[3], trials)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for counts in pool.map(_block_task, tasks):
                total = total.merge(counts)
        logger.debug("%s: %d trials over %d workers", model.kind, trials, workers)
    return total

# ============================================================
# Estimation
# ============================================================

def exact_target(model: ModelSpec) -> Fraction:
    if model.kind == "uniform-composition-two-draws":
        return conditional_ratio_answer(model.n)[2]
    if model.kind == "weighted-red-pick":
        return weighted_prior_answer(model.n)
    return symmetry_answer(model.n)


def conditioning_target(model: ModelSpec) -> Fraction:
    if model.kind == "uniform-composition-two-draws":
        return conditional_ratio_answer(model.n)[0]
    return Fraction(1)


def _z_score(observed: float, target: Fraction, samples: int):
    p = float(target)
    se = math.sqrt(p * (1.0 - p) / samples)
    if se == 0.0:
        return se, 0.0 if observed == p else math.inf
    return se, (observed - p) / se


def _verdict(z: float, threshold: float) -> Verdict:
    return "pass" if abs(z) <= threshold else "fail"


def report_from_counts(model: ModelSpec, counts: BlockCounts, seed: int,
                       z_threshold: Optional[float] = None) -> SimulationReport:
    """Estimate and verdicts from tallies already simulated"""
    threshold = config.DEFAULT_Z_THRESHOLD if z_threshold is None else z_threshold
    if counts.conditioned == 0:
        raise EstimationError(
            f"no trial of {model.kind} met the conditioning event in {counts.trials} trials"
        )

    target = exact_target(model)
    observed = counts.successes / counts.conditioned
    se, z = _z_score(observed, target, counts.conditioned)

    cond_target = conditioning_target(model)
    cond_rate = counts.conditioned / counts.trials
    _, cond_z = _z_score(cond_rate, cond_target, counts.trials)

    report = SimulationReport(
        model=model,
        seed=seed,
        trials=counts.trials,
        conditioning_hits=counts.conditioned,
        successes=counts.successes,
        estimate=observed,
        exact_target=target,
        standard_error=se,
        z_score=z,
        z_threshold=threshold,
        verdict=_verdict(z, threshold),
        conditioning_rate=cond_rate,
        conditioning_target=cond_target,
        conditioning_z=cond_z,
        conditioning_verdict=_verdict(cond_z, threshold),
    )
    logger.info("%s n=%d: estimate %.6f vs %s (z=%.3f) %s",
                model.kind, model.n, observed, target, z, report.verdict)
    return report


def _check_two_draw(model: ModelSpec):
    if model.kind != "uniform-composition-two-draws":
        raise DomainError(f"frequency table needs the two-draw model, got {model.kind}")


def table_from_counts(model: ModelSpec, tallies: BlockCounts, seed: int,
                      quantile: Optional[float] = None) -> FrequencyTable:
    """Ordered two-draw outcomes against (1/3, 1/6, 1/6, 1/3), Pearson chi-square with 3 df"""
    _check_two_draw(model)
    quantile = config.CHI_SQUARE_QUANTILE if quantile is None else quantile

    trials = tallies.trials
    counts = tallies.ordered()
    expected = ordered_distribution(model.n).as_dict()
    observed = [counts[label] for label in ORDERED_LABELS]
    f_exp = [float(expected[label]) * trials for label in ORDERED_LABELS]
    chi_square, p_value = stats.chisquare(observed, f_exp=f_exp)
    dof = len(ORDERED_LABELS) - 1
    critical = float(stats.chi2.ppf(quantile, dof))

    return FrequencyTable(
        model=model,
        seed=seed,
        trials=trials,
        counts=counts,
        frequencies={label: counts[label] / trials for label in ORDERED_LABELS},
        expected=expected,
        chi_square=float(chi_square),
        p_value=float(p_value),
        degrees_of_freedom=dof,
        critical_value=critical,
        verdict="pass" if chi_square <= critical else "fail",
    )


def estimate(model: ModelSpec, trials: int, seed: int, workers: int = 1,
             z_threshold: Optional[float] = None) -> SimulationReport:
    counts = run_counts(model, trials, seed, workers)
    return report_from_counts(model, counts, seed, z_threshold)


def frequency_table(model: ModelSpec, trials: int, seed: int, workers: int = 1,
                    quantile: Optional[float] = None) -> FrequencyTable:
    _check_two_draw(model)
    counts = run_counts(model, trials, seed, workers)
    return table_from_counts(model, counts, seed, quantile)
