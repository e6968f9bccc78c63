"""
Tests for the paradox catalog
"""

import pytest

from urnlab.exact_core import ConditioningError, DomainError, rat
from urnlab.induction_engine import ordered_distribution
from urnlab.paradox_catalog import (
    SCENARIOS,
    Outcome,
    Scenario,
    bertrand_box,
    boy_girl_at_least_one,
    boy_girl_older_known,
    evaluate,
    get_scenario,
    multiset_scenario,
    relabel,
)

QUARTER = rat(1, 4)


def test_catalog_answers():
    assert evaluate(bertrand_box()) == rat(2, 3)
    assert evaluate(boy_girl_older_known()) == rat(1, 2)
    assert evaluate(boy_girl_at_least_one()) == rat(1, 3)


def test_registry_names():
    assert set(SCENARIOS) == {"bertrand-box", "boy-girl-older", "boy-girl-at-least-one"}
    for name in SCENARIOS:
        assert get_scenario(name).name == name


def test_unknown_scenario_lists_valid_names():
    with pytest.raises(DomainError, match="bertrand-box"):
        get_scenario("monty-hall")


def test_bertrand_box_is_the_two_ball_urn():
    box = bertrand_box()
    assert box.probabilities() == ordered_distribution(2).as_dict()
    # only the GG box fails the condition
    assert sorted(box.conditioned_labels()) == ["RG", "RR"]


@pytest.mark.parametrize("n", [2, 3, 10, 100])
def test_multiset_scenario_answer(n):
    assert evaluate(multiset_scenario(n)) == rat(2, 3)


def test_target_equal_to_condition_gives_one():
    for factory in SCENARIOS.values():
        s = factory()
        same = Scenario(
            name=s.name,
            outcome_space=s.outcome_space,
            conditioning_event=s.conditioning_event,
            target_event=s.conditioning_event,
        )
        assert evaluate(same) == 1


def test_relabelling_keeps_the_answer():
    s = boy_girl_at_least_one()
    renamed = relabel(s, {"BB": "two-boys", "BG": "older-boy", "GB": "younger-boy", "GG": "no-boys"})
    assert [o.label for o in renamed.outcome_space] == ["two-boys", "older-boy", "younger-boy", "no-boys"]
    assert evaluate(renamed) == evaluate(s)

    box = bertrand_box()
    assert evaluate(relabel(box, {"RR": "both", "GG": "none"})) == rat(2, 3)


def test_relabel_must_be_one_to_one():
    with pytest.raises(DomainError):
        relabel(bertrand_box(), {"RG": "mixed", "GR": "mixed"})


def test_zero_probability_condition():
    s = Scenario(
        name="impossible",
        outcome_space=tuple(Outcome(label=label, probability=QUARTER) for label in ("a", "b", "c", "d")),
        conditioning_event=lambda label: label == "e",
        target_event=lambda label: True,
    )
    with pytest.raises(ConditioningError):
        evaluate(s)


def test_outcome_space_must_sum_to_one():
    with pytest.raises(ValueError):
        Scenario(
            name="short",
            outcome_space=(Outcome(label="a", probability=QUARTER),),
            conditioning_event=lambda label: True,
            target_event=lambda label: True,
        )
    with pytest.raises(ValueError):
        Scenario(
            name="twice",
            outcome_space=(Outcome(label="a", probability=rat(1, 2)),
                           Outcome(label="a", probability=rat(1, 2))),
            conditioning_event=lambda label: True,
            target_event=lambda label: True,
        )
