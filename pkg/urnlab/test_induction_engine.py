"""
Tests for the inductive two-ball sample count
"""

import itertools
from collections import Counter

import pytest

from urnlab.exact_core import DomainError, rat
from urnlab.induction_engine import (
    OrderedOutcomeDist,
    SampleTally,
    base_case_tally,
    direct_tally,
    extend_tally,
    family_colour_counts,
    inductive_answer,
    inductive_tally,
    multiset_distribution,
    new_ball_groups,
    ordered_distribution,
    reduce_family,
    reduced_collection_red_fraction,
)
from urnlab.symmetry_model import symmetry_answer
from urnlab.urn_models import UrnComposition, conditional_ratio_answer, weighted_prior_answer

THIRD = rat(1, 3)
SIXTH = rat(1, 6)
UNIFORM = (THIRD, THIRD, THIRD)


def enumerated_counts(n):
    """Unordered two-ball samples of every U_{n,x}, by number of reds"""
    counts = Counter()
    for x in range(0, n + 1):
        for a, b in itertools.combinations(range(n), 2):
            counts[(a < x) + (b < x)] += 1
    return {j: counts[j] for j in (0, 1, 2)}


# ------------------ base case ------------------

def test_base_case():
    t = base_case_tally()
    assert t.n == 2
    assert t.counts == {0: 1, 1: 1, 2: 1}
    assert t.total == 3
    assert t.probabilities() == UNIFORM


def test_tally_total_is_enforced():
    with pytest.raises(ValueError):
        SampleTally(n=3, counts={0: 1, 1: 1, 2: 1})
    with pytest.raises(ValueError):
        SampleTally(n=2, counts={0: 3})


# ------------------ extension ------------------

def test_first_extension():
    t = extend_tally(base_case_tally())
    assert t.n == 3
    assert t.counts == {0: 4, 1: 4, 2: 4}
    assert t.counts == enumerated_counts(3)
    assert new_ball_groups(base_case_tally()) == (3, 3, 3)


def test_extension_rejects_malformed_tally():
    with pytest.raises(DomainError):
        extend_tally({"n": 2, "counts": {0: 1, 1: 1, 2: 1}})


def test_every_extension_step():
    t = base_case_tally()
    for n in range(2, 301):
        half = n * (n + 1) // 2
        assert new_ball_groups(t) == (half, half, half)
        assert family_colour_counts(n) == (half, half)
        assert t.counts == direct_tally(n).counts
        assert len(set(t.counts.values())) == 1
        t = extend_tally(t)


@pytest.mark.parametrize("n", [3, 4, 5, 8])
def test_tally_matches_enumeration(n):
    assert inductive_tally(n).counts == enumerated_counts(n)


# ------------------ distributions ------------------

@pytest.mark.parametrize("n", [2, 5, 100, 300])
def test_multiset_distribution_known_values(n):
    assert multiset_distribution(n) == UNIFORM


def test_multiset_distribution_direct_sum():
    for n in range(2, 301, 13):
        assert direct_tally(n).probabilities() == UNIFORM


def test_ordered_distribution():
    dist = ordered_distribution(100)
    assert dist.as_dict() == {"GG": THIRD, "GR": SIXTH, "RG": SIXTH, "RR": THIRD}
    assert dist.first_red() == rat(1, 2)
    assert dist.second_red() == rat(1, 2)
    assert sum(dist.as_dict().values()) == 1


def test_ordered_distribution_invariants_enforced():
    with pytest.raises(ValueError):
        OrderedOutcomeDist(gg=THIRD, gr=THIRD, rg=0, rr=THIRD)


def test_ordered_marginals_every_n():
    for n in range(2, 40):
        dist = ordered_distribution(n)
        assert dist.first_red() == dist.second_red() == rat(1, 2)


# ------------------ answer ------------------

@pytest.mark.parametrize("n", [100, 2, 33])
def test_inductive_answer_known_values(n):
    assert inductive_answer(n) == rat(2, 3)


def test_four_solvers_agree():
    for n in range(2, 201):
        answer = inductive_answer(n)
        assert answer == weighted_prior_answer(n)
        assert answer == symmetry_answer(n)
        assert answer == conditional_ratio_answer(n)[2]
        assert answer == rat(2, 3)


# ------------------ reduced collection ------------------

@pytest.mark.parametrize("n", [100, 2, 7])
def test_reduced_collection_red_fraction(n):
    assert reduced_collection_red_fraction(n) == rat(1, 2)


def test_reduced_family_structure():
    assert sorted(reduce_family(3), key=lambda u: u.x) == [
        UrnComposition(n=2, x=0), UrnComposition(n=2, x=1), UrnComposition(n=2, x=2)
    ]
    assert reduce_family(2) == [UrnComposition(n=1, x=0), UrnComposition(n=1, x=1)]
