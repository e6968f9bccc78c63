"""
Symmetry model
The three-step index process: i splits a row of n balls into green and red,
j is the red ball drawn first, k is the second ball. Every answer here is
derived by counting over the (i, j) pairs.
"""

import logging
from collections import Counter
from fractions import Fraction
from typing import Iterator, Literal, NamedTuple, Tuple

import numpy as np

from .exact_core import DomainError, binomial, rat

logger = logging.getLogger(__name__)

# ============================================================
# Data Models
# ============================================================

class IntervalTriple(NamedTuple):
    """Lengths of [1, i], [i+1, j-1] and [j+1, n]; they sum to n - 1"""
    l1: int
    l2: int
    l3: int


class IndexDraw(NamedTuple):
    """One outcome of the three-step process and its exact probability"""
    i: int
    j: int
    k: int
    weight: Fraction


def _check_size(n: int):
    if n < 2:
        raise DomainError(f"index process needs at least 2 balls, got n={n}")

# ============================================================
# Pairs and intervals
# ============================================================

def pair_count(n: int) -> int:
    """Number of pairs 0 <= i < j <= n, i.e. C(n+1, 2)"""
    _check_size(n)
    return int(binomial(n + 1, 2))


def iter_pairs(n: int) -> Iterator[Tuple[int, int]]:
    """All (i, j) with 0 <= i < j <= n, lexicographic"""
    _check_size(n)
    for i in range(0, n + 1):
        for j in range(i + 1, n + 1):
            yield i, j


def triangular_unrank(n: int, ranks: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Split ranks into (block, offset) where block b in 1..n holds b ranks,
    block b covering ranks b(b-1)/2 .. b(b+1)/2 - 1. With j as the block and
    i as the offset this lists the pairs by increasing j, then i; with x as the
    block it picks a red ball out of U_1..U_n.
    """
    ranks = np.asarray(ranks, dtype=np.int64)
    cumulative = np.cumsum(np.arange(1, n + 1, dtype=np.int64))
    block = np.searchsorted(cumulative, ranks, side="right") + 1
    offset = ranks - block * (block - 1) // 2
    return block, offset


def unrank_pair(n: int, r: int) -> Tuple[int, int]:
    """The r-th pair (i, j) in triangular_unrank order"""
    if not 0 <= r < pair_count(n):
        raise DomainError(f"pair rank {r} outside 0..{pair_count(n) - 1}")
    j, i = triangular_unrank(n, np.array([r]))
    return int(i[0]), int(j[0])


def intervals_for(n: int, i: int, j: int) -> IntervalTriple:
    if not 0 <= i < j <= n:
        raise DomainError(f"need 0 <= i < j <= n, got i={i}, j={j}, n={n}")
    return IntervalTriple(i, j - i - 1, n - j)


def enumerate_triples(n: int) -> Iterator[IntervalTriple]:
    """Interval triple of every (i, j) pair, lexicographic in (i, j)"""
    for i, j in iter_pairs(n):
        yield intervals_for(n, i, j)


def triple_multiset(n: int) -> Counter:
    return Counter(enumerate_triples(n))


def classify_second_ball(n: int, i: int, j: int, k: int) -> Literal[1, 2, 3]:
    """Which interval the second ball k falls in"""
    triple = intervals_for(n, i, j)
    if k == j or not 1 <= k <= n:
        raise DomainError(f"second ball must lie in 1..{n} and differ from j={j}, got k={k}")
    if k <= triple.l1:
        return 1
    if k < j:
        return 2
    return 3


def is_second_red(n: int, i: int, j: int, k: int) -> bool:
    return classify_second_ball(n, i, j, k) != 1

# ============================================================
# Exact derivations
# ============================================================

def enumerate_index_process(n: int) -> Iterator[IndexDraw]:
    """Every (i, j, k) with its probability: (i, j) uniform over pairs, k uniform off j"""
    weight = rat(1, pair_count(n) * (n - 1))
    for i, j in iter_pairs(n):
        for k in range(1, n + 1):
            if k != j:
                yield IndexDraw(i, j, k, weight)


def expected_lengths(n: int) -> Tuple[Fraction, Fraction, Fraction]:
    """Exact mean of each interval length over all pairs"""
    sums = [0, 0, 0]
    count = 0
    for triple in enumerate_triples(n):
        for slot, length in enumerate(triple):
            sums[slot] += length
        count += 1
    return tuple(rat(s, count) for s in sums)


def symmetry_answer(n: int, method: Literal["counting", "expectation"] = "counting") -> Fraction:
    """
    Probability the second ball is red.
    counting: red landings of k summed over all pairs, over all (pair, k) outcomes.
    expectation: (E[l2] + E[l3]) / (n - 1).
    """
    _check_size(n)
    if method == "counting":
        # k off j lands on a red ball in exactly l2 + l3 of the n - 1 positions
        favourable = sum(t.l2 + t.l3 for t in enumerate_triples(n))
        logger.debug("symmetry n=%d: %d red landings of %d", n, favourable, pair_count(n) * (n - 1))
        return rat(favourable, pair_count(n) * (n - 1))
    if method == "expectation":
        _, e2, e3 = expected_lengths(n)
        return (e2 + e3) / (n - 1)
    raise DomainError(f"unknown symmetry method {method!r}")


def complement_answer(n: int) -> Fraction:
    """The l2 + l3 = (n-1) - l1 route"""
    e1, _, _ = expected_lengths(n)
    return ((n - 1) - e1) / (n - 1)
