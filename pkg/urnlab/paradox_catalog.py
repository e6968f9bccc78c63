"""
Paradox catalog
Classical conditional-probability puzzles as finite outcome spaces with a
conditioning event and a target event. The urn puzzle at n = 2 is Bertrand's
box; the two boy-or-girl questions sit on a uniform space of ordered pairs.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from .exact_core import ConditioningError, DomainError, ExactFraction, rat
from .induction_engine import ordered_distribution

logger = logging.getLogger(__name__)

# ============================================================
# Data Models
# ============================================================

class Outcome(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)
    label: str
    probability: ExactFraction


class Scenario(BaseModel):
    """A finite probability space with the question asked of it"""
    model_config = ConfigDict(extra="forbid", frozen=True)
    name: str
    description: str = ""
    outcome_space: Tuple[Outcome, ...]
    conditioning_event: Callable[[str], bool]
    target_event: Callable[[str], bool]

    @model_validator(mode="after")
    def _check_space(self):
        labels = [o.label for o in self.outcome_space]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate outcome labels in {self.name}")
        if any(o.probability < 0 for o in self.outcome_space):
            raise ValueError(f"negative probability in {self.name}")
        total = sum((o.probability for o in self.outcome_space), Fraction(0))
        if total != 1:
            raise ValueError(f"outcome probabilities of {self.name} sum to {total}, not 1")
        return self

    def probabilities(self) -> Dict[str, Fraction]:
        return {o.label: o.probability for o in self.outcome_space}

    def conditioned_labels(self) -> List[str]:
        return [o.label for o in self.outcome_space if self.conditioning_event(o.label)]

# ============================================================
# Evaluation
# ============================================================

def evaluate(s: Scenario) -> Fraction:
    """Pr[target | condition]"""
    p_condition = Fraction(0)
    p_joint = Fraction(0)
    for outcome in s.outcome_space:
        if s.conditioning_event(outcome.label):
            p_condition += outcome.probability
            if s.target_event(outcome.label):
                p_joint += outcome.probability
    if p_condition == 0:
        raise ConditioningError(f"conditioning event of {s.name} has probability 0")
    logger.debug("%s: Pr[condition]=%s Pr[both]=%s", s.name, p_condition, p_joint)
    return p_joint / p_condition


def relabel(s: Scenario, mapping: Mapping[str, str]) -> Scenario:
    """Same scenario with outcome labels renamed; the events follow the renaming"""
    inverse = {new: old for old, new in mapping.items()}
    if len(inverse) != len(mapping):
        raise DomainError("relabelling must be one-to-one")
    condition, target = s.conditioning_event, s.target_event
    return Scenario(
        name=s.name,
        description=s.description,
        outcome_space=tuple(
            Outcome(label=mapping.get(o.label, o.label), probability=o.probability)
            for o in s.outcome_space
        ),
        conditioning_event=lambda label: condition(inverse.get(label, label)),
        target_event=lambda label: target(inverse.get(label, label)),
    )

# ============================================================
# Built-in scenarios
# ============================================================

def multiset_scenario(n: int) -> Scenario:
    """The urn puzzle at size n: ordered colours (first, second), second red given first red"""
    dist = ordered_distribution(n).as_dict()
    return Scenario(
        name=f"urn-{n}",
        description=f"x uniform on 0..{n}, two balls drawn without replacement from U_{{{n},x}}",
        outcome_space=tuple(Outcome(label=label, probability=p) for label, p in dist.items()),
        conditioning_event=lambda label: label[0] == "R",
        target_event=lambda label: label == "RR",
    )


def bertrand_box() -> Scenario:
    urn = multiset_scenario(2)
    return Scenario(
        name="bertrand-box",
        description=(
            "Three boxes holding GG, RG and RR, one picked at random; "
            "the first ball taken out is R. Is the other one R too?"
        ),
        outcome_space=urn.outcome_space,
        conditioning_event=urn.conditioning_event,
        target_event=urn.target_event,
    )


# Children are written (older, younger)
_CHILD_PAIRS = ("BB", "BG", "GB", "GG")


def _children_space() -> Tuple[Outcome, ...]:
    return tuple(Outcome(label=label, probability=rat(1, 4)) for label in _CHILD_PAIRS)


def boy_girl_older_known() -> Scenario:
    return Scenario(
        name="boy-girl-older",
        description="Two children, the older is a girl. Are both girls?",
        outcome_space=_children_space(),
        conditioning_event=lambda label: label[0] == "G",
        target_event=lambda label: label == "GG",
    )


def boy_girl_at_least_one() -> Scenario:
    """
    The 1/3 reading: the four ordered pairs equally likely. The 1/2 reading
    depends on how the family came to be reported and is not modelled.
    """
    return Scenario(
        name="boy-girl-at-least-one",
        description="Two children, at least one is a boy. Are both boys?",
        outcome_space=_children_space(),
        conditioning_event=lambda label: "B" in label,
        target_event=lambda label: label == "BB",
    )


SCENARIOS: Dict[str, Callable[[], Scenario]] = {
    "bertrand-box": bertrand_box,
    "boy-girl-older": boy_girl_older_known,
    "boy-girl-at-least-one": boy_girl_at_least_one,
}


def get_scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]()
    except KeyError:
        raise DomainError(
            f"unknown scenario {name!r}; valid names: {', '.join(SCENARIOS)}"
        ) from None
