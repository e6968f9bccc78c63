"""
urnlab - exact and simulated answers to the random-composition urn puzzle
"""

__version__ = "1.0.0"

from .exact_core import (
    ConditioningError,
    DomainError,
    EstimationError,
    Rational,
    UrnLabError,
    rat,
)
from .induction_engine import inductive_answer
from .symmetry_model import symmetry_answer
from .urn_models import (
    conditional_ratio_answer,
    next_red_given_prefix,
    uniform_prior_answer,
    weighted_prior_answer,
)
