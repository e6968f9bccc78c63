"""
Urn models
Exact solvers over a prior on urn compositions: the per-urn route with a
uniform or a red-weighted prior, the conditional-probability ratio, and
Bayesian updating on any observed draw prefix.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Literal, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from .exact_core import (
    ConditioningError,
    DomainError,
    ExactFraction,
    binomial,
    falling_factorial,
    rat,
    square_pyramidal,
    sum_integers,
)

logger = logging.getLogger(__name__)

# ============================================================
# Data Models
# ============================================================

Color = Literal["R", "G"]
RED: Color = "R"
GREEN: Color = "G"

# Ordered colours observed so far, first draw first
DrawSequence = Tuple[Color, ...]


class UrnComposition(BaseModel):
    """An urn of n balls, x of them red"""
    model_config = ConfigDict(extra="forbid", frozen=True)
    n: int
    x: int

    @model_validator(mode="after")
    def _check_counts(self):
        if self.n < 1:
            raise ValueError(f"urn needs at least one ball, got n={self.n}")
        if not 0 <= self.x <= self.n:
            raise ValueError(f"red count must lie in 0..{self.n}, got x={self.x}")
        return self

    @property
    def green(self) -> int:
        return self.n - self.x


class CompositionPrior(BaseModel):
    """Probability distribution over the red count x of an n-ball urn"""
    model_config = ConfigDict(extra="forbid", frozen=True)
    n: int
    weights: Dict[int, ExactFraction]

    @model_validator(mode="after")
    def _check_distribution(self):
        if self.n < 1:
            raise ValueError(f"prior needs n >= 1, got {self.n}")
        for x, w in self.weights.items():
            if not 0 <= x <= self.n:
                raise ValueError(f"composition x={x} outside 0..{self.n}")
            if w < 0:
                raise ValueError(f"negative weight {w} at x={x}")
        total = sum(self.weights.values(), Fraction(0))
        if total != 1:
            raise ValueError(f"weights sum to {total}, not 1")
        return self

    def weight(self, x: int) -> Fraction:
        return self.weights.get(x, Fraction(0))

    def support(self) -> List[int]:
        """Compositions with positive weight, increasing x"""
        return sorted(x for x, w in self.weights.items() if w > 0)


def parse_draws(text: str) -> DrawSequence:
    """'RRG' -> ('R', 'R', 'G'); case-insensitive, whitespace ignored"""
    draws = []
    for ch in "".join(text.split()).upper():
        if ch not in (RED, GREEN):
            raise DomainError(f"draw sequence may contain only R and G, got {ch!r}")
        draws.append(ch)
    return tuple(draws)


def _check_colours(prefix: Sequence[Color]) -> DrawSequence:
    prefix = tuple(prefix)
    for c in prefix:
        if c not in (RED, GREEN):
            raise DomainError(f"draw colours must be R or G, got {c!r}")
    return prefix


def _check_urn_size(n: int):
    if n < 2:
        raise DomainError(f"urn size must be at least 2, got n={n}")


def _make_prior(n: int, weights: Dict[int, Fraction]) -> CompositionPrior:
    try:
        return CompositionPrior(n=n, weights=weights)
    except ValidationError as e:
        raise DomainError(str(e)) from e

# ============================================================
# Priors
# ============================================================

def uniform_prior(n: int, lo: int = 0) -> CompositionPrior:
    """Equal weight on every x in lo..n"""
    if n < 1 or not 0 <= lo <= n:
        raise DomainError(f"uniform prior needs 0 <= lo <= n and n >= 1, got lo={lo}, n={n}")
    w = rat(1, n - lo + 1)
    return _make_prior(n, {x: w for x in range(lo, n + 1)})


def weighted_prior(n: int) -> CompositionPrior:
    """Pr[U_x] = 2x / (n(n+1)): the urn of a red ball picked from the whole family"""
    _check_urn_size(n)
    total_red = sum_integers(n)
    return _make_prior(n, {x: x / total_red for x in range(1, n + 1)})


def prior_mean_red(prior: CompositionPrior) -> Fraction:
    """Expected number of red balls under the prior"""
    return sum((w * x for x, w in sorted(prior.weights.items())), Fraction(0))

# ============================================================
# Per-urn probabilities
# ============================================================

def per_urn_second_red(n: int, x: int) -> Fraction:
    """Probability the second ball is red once a red ball has left U_{n,x}"""
    _check_urn_size(n)
    if not 1 <= x <= n:
        raise DomainError(f"need a red ball to remove: x must lie in 1..{n}, got {x}")
    return rat(x - 1, n - 1)


def prefix_likelihood(n: int, x: int, prefix: Sequence[Color]) -> Fraction:
    """Probability of drawing exactly `prefix`, in order, without replacement from U_{n,x}"""
    prefix = _check_colours(prefix)
    k = len(prefix)
    if k > n:
        raise DomainError(f"cannot draw {k} balls from an urn of {n}")
    reds = sum(1 for c in prefix if c == RED)
    greens = k - reds
    # the order of the prefix does not change its probability
    return (falling_factorial(x, reds) * falling_factorial(n - x, greens)) / falling_factorial(n, k)

# ============================================================
# Solvers
# ============================================================

def uniform_prior_answer(n: int) -> Fraction:
    """Second-red probability if each of U_1..U_n were equally likely (gives 1/2)"""
    _check_urn_size(n)
    total = Fraction(0)
    for x in range(1, n + 1):
        total += rat(1, n) * per_urn_second_red(n, x)
    return total


def uniform_prior_closed_form(n: int) -> Fraction:
    _check_urn_size(n)
    return sum_integers(n - 1) / (n * (n - 1))


def weighted_prior_answer(n: int) -> Fraction:
    """Second-red probability under the red-weighted prior (gives 2/3)"""
    prior = weighted_prior(n)
    total = Fraction(0)
    for x in range(1, n + 1):
        total += prior.weight(x) * per_urn_second_red(n, x)
    return total


def weighted_prior_closed_form(n: int) -> Fraction:
    """Same sum as weighted_prior_answer, via sum(x^2) - sum(x)"""
    _check_urn_size(n)
    return 2 * (square_pyramidal(n) - sum_integers(n)) / ((n - 1) * n * (n + 1))


def weighted_prior_via_hockey_stick(n: int) -> Fraction:
    """Same sum again, using sum(x(x-1)) = 2 C(n+1, 3)"""
    _check_urn_size(n)
    return 2 * (2 * binomial(n + 1, 3)) / ((n - 1) * n * (n + 1))


def conditional_ratio_answer(n: int) -> Tuple[Fraction, Fraction, Fraction]:
    """(Pr[first red], Pr[both red], Pr[both red] / Pr[first red]) with x uniform on 0..n"""
    _check_urn_size(n)
    p_first_red = Fraction(0)
    p_both_red = Fraction(0)
    for x in range(0, n + 1):
        p_first_red += rat(1, n + 1) * rat(x, n)
        p_both_red += rat(x * (x - 1), (n + 1) * n * (n - 1))
    logger.debug("conditional ratio n=%d: first=%s both=%s", n, p_first_red, p_both_red)
    return p_first_red, p_both_red, p_both_red / p_first_red


def posterior_given_prefix(prior: CompositionPrior, prefix: Sequence[Color]) -> CompositionPrior:
    """Bayes update of the prior on an ordered draw prefix"""
    prefix = _check_colours(prefix)
    if len(prefix) > prior.n:
        raise DomainError(f"prefix of length {len(prefix)} exceeds urn size {prior.n}")

    joint = {}
    for x in range(0, prior.n + 1):
        if x not in prior.weights:
            continue
        joint[x] = prior.weights[x] * prefix_likelihood(prior.n, x, prefix)

    evidence = sum(joint.values(), Fraction(0))
    if evidence == 0:
        observed = "".join(prefix) or "<empty>"
        raise ConditioningError(
            f"draw sequence {observed} has probability 0 under every composition of the prior"
        )
    return _make_prior(prior.n, {x: p / evidence for x, p in joint.items()})


def next_red_given_prefix(n: int, prefix: Sequence[Color]) -> Fraction:
    """
    Probability the next ball is red given the ordered prefix, with x uniform
    on 0..n. For r reds among k draws this is (r+1)/(k+2).
    """
    _check_urn_size(n)
    prefix = _check_colours(prefix)
    k = len(prefix)
    if k >= n:
        raise DomainError(f"no ball left to draw after {k} draws from an urn of {n}")
    reds = sum(1 for c in prefix if c == RED)

    posterior = posterior_given_prefix(uniform_prior(n), prefix)
    total = Fraction(0)
    for x in range(0, n + 1):
        w = posterior.weight(x)
        if w:
            total += w * rat(x - reds, n - k)
    return total
