"""
Induction engine
Two-ball samples counted over the urn family U_{n,0} .. U_{n,n}. The tally
grows from n = 2 by adding one green ball to every urn plus a new all-red
urn, and stays uniform over {GG, RG, RR}.
"""

import logging
from collections import Counter
from fractions import Fraction
from typing import Dict, List, NamedTuple, Tuple

from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from .exact_core import DomainError, ExactFraction, binomial, rat
from .urn_models import UrnComposition

logger = logging.getLogger(__name__)

# ============================================================
# Data Models
# ============================================================

class SampleTally(BaseModel):
    """counts[j]: two-ball samples containing j red balls, summed over U_{n,0..n}"""
    model_config = ConfigDict(extra="forbid", frozen=True)
    n: int
    counts: Dict[int, int]

    @model_validator(mode="after")
    def _check_total(self):
        if self.n < 2:
            raise ValueError(f"tally needs n >= 2, got {self.n}")
        if set(self.counts) != {0, 1, 2}:
            raise ValueError(f"tally keys must be 0, 1, 2, got {sorted(self.counts)}")
        if any(c < 0 for c in self.counts.values()):
            raise ValueError("tally counts must be non-negative")
        expected = (self.n + 1) * int(binomial(self.n, 2))
        if self.total != expected:
            raise ValueError(f"tally at n={self.n} holds {self.total} samples, expected {expected}")
        return self

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def probabilities(self) -> Tuple[Fraction, Fraction, Fraction]:
        return tuple(rat(self.counts[j], self.total) for j in (0, 1, 2))


class NewBallGroups(NamedTuple):
    """Samples with at least one new ball, by the colours involved"""
    new_green_old_green: int
    new_green_old_red: int
    two_new_red: int


class OrderedOutcomeDist(BaseModel):
    """Distribution of (first, second) colours"""
    model_config = ConfigDict(extra="forbid", frozen=True)
    gg: ExactFraction
    gr: ExactFraction
    rg: ExactFraction
    rr: ExactFraction

    @model_validator(mode="after")
    def _check_distribution(self):
        if self.gg + self.gr + self.rg + self.rr != 1:
            raise ValueError("ordered outcome probabilities must sum to 1")
        if self.gr != self.rg:
            raise ValueError("mixed samples must split evenly between RG and GR")
        return self

    def as_dict(self) -> Dict[str, Fraction]:
        return {"GG": self.gg, "GR": self.gr, "RG": self.rg, "RR": self.rr}

    def first_red(self) -> Fraction:
        return self.rg + self.rr

    def second_red(self) -> Fraction:
        return self.gr + self.rr


def _check_size(n: int):
    if n < 2:
        raise DomainError(f"urn family needs n >= 2, got n={n}")


def _tally(n: int, counts: Dict[int, int]) -> SampleTally:
    try:
        return SampleTally(n=n, counts=counts)
    except ValidationError as e:
        raise DomainError(str(e)) from e

# ============================================================
# Urn family
# ============================================================

def urn_family(n: int) -> List[UrnComposition]:
    return [UrnComposition(n=n, x=x) for x in range(0, n + 1)]


def family_colour_counts(n: int) -> Tuple[int, int]:
    """(red, green) ball totals over U_{n,0..n}"""
    reds = sum(x for x in range(0, n + 1))
    greens = sum(n - x for x in range(0, n + 1))
    return reds, greens

# ============================================================
# Induction
# ============================================================

def base_case_tally() -> SampleTally:
    """n = 2: the urns give exactly {G,G}, {R,G} and {R,R}"""
    return _tally(2, {0: 1, 1: 1, 2: 1})


def new_ball_groups(t: SampleTally) -> NewBallGroups:
    """
    Samples gained going from n to n+1. U_{n+1,x} (x <= n) is U_{n,x} plus
    one new green ball; U_{n+1,n+1} is all new red balls.
    """
    n = t.n
    # one new green ball per old green ball, and per old red ball
    new_green_old_red, new_green_old_green = family_colour_counts(n)
    two_new_red = int(binomial(n + 1, 2))
    return NewBallGroups(new_green_old_green, new_green_old_red, two_new_red)


def extend_tally(t: SampleTally) -> SampleTally:
    """Tally at n+1 from the tally at n"""
    if not isinstance(t, SampleTally):
        raise DomainError(f"expected a SampleTally, got {type(t).__name__}")
    groups = new_ball_groups(t)
    counts = {
        0: t.counts[0] + groups.new_green_old_green,
        1: t.counts[1] + groups.new_green_old_red,
        2: t.counts[2] + groups.two_new_red,
    }
    return _tally(t.n + 1, counts)


def inductive_tally(n: int) -> SampleTally:
    _check_size(n)
    t = base_case_tally()
    while t.n < n:
        t = extend_tally(t)
    return t


def direct_tally(n: int) -> SampleTally:
    """Hypergeometric count: sum over x of C(x, j) C(n-x, 2-j)"""
    _check_size(n)
    counts = {
        j: sum(int(binomial(x, j) * binomial(n - x, 2 - j)) for x in range(0, n + 1))
        for j in (0, 1, 2)
    }
    return _tally(n, counts)


def multiset_distribution(n: int) -> Tuple[Fraction, Fraction, Fraction]:
    """Pr[E_0], Pr[E_1], Pr[E_2] from the inductive tally"""
    t = inductive_tally(n)
    direct = direct_tally(n)
    if t.counts != direct.counts:
        raise DomainError(
            f"inductive tally {t.counts} disagrees with direct count {direct.counts} at n={n}"
        )
    logger.debug("multiset tally n=%d: %s", n, t.counts)
    return t.probabilities()


def ordered_distribution(n: int) -> OrderedOutcomeDist:
    p0, p1, p2 = multiset_distribution(n)
    return OrderedOutcomeDist(gg=p0, gr=p1 / 2, rg=p1 / 2, rr=p2)


def inductive_answer(n: int) -> Fraction:
    dist = ordered_distribution(n)
    return dist.rr / (dist.rr + dist.rg)

# ============================================================
# Reduced collection
# ============================================================

def reduce_family(n: int) -> List[UrnComposition]:
    """Drop U_{n,0}, then take one red ball out of every remaining urn"""
    _check_size(n)
    return [UrnComposition(n=u.n - 1, x=u.x - 1) for u in urn_family(n) if u.x > 0]


def reduced_collection_red_fraction(n: int) -> Fraction:
    """Fraction of red balls across the reduced family U_{n-1,0..n-1}"""
    reduced = reduce_family(n)
    expected = Counter(UrnComposition(n=n - 1, x=x) for x in range(0, n))
    if Counter(reduced) != expected:
        raise DomainError(f"reduced family at n={n} is not U_{{n-1,x}} for 0 <= x <= n-1")
    reds = sum(u.x for u in reduced)
    balls = sum(u.n for u in reduced)
    return rat(reds, balls)
