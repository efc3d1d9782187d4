"""Dynamic epistemic logic with general attention.

Formulas, Kripke and attention models, three event formalisms (standard,
edge-conditioned, generalized arrow updates), product updates, translations
between the formalisms, reduction axioms, a multi-agent K tableau,
bisimulation/isomorphism checking and attention event models.
"""

from .formula import (TOP, BOT, And, Atom, AttAtom, Attends, Believes, Dyn,
                      Formula, LanguageTag, Literal, Not, Top, big_and, disj,
                      formula_size, hierarchy_level, iff, implies, parse, to_text)
from .models import AttentionModel, KripkeModel, Pointed, random_model, validate
from .events import (ConditionedEdge, EdgeConditionedEventModel,
                     GeneralizedArrowUpdate, StandardEventModel)
from .semantics import satisfies, update
from .equivalence import bisimilar, isomorphic
from .attention import build_F, build_H, build_R

__version__ = "0.1.0"

__all__ = [
    "TOP", "BOT", "And", "Atom", "AttAtom", "Attends", "Believes", "Dyn", "Formula",
    "LanguageTag", "Literal", "Not", "Top", "big_and", "disj", "formula_size",
    "hierarchy_level", "iff", "implies", "parse", "to_text", "AttentionModel",
    "KripkeModel", "Pointed", "random_model", "validate", "ConditionedEdge",
    "EdgeConditionedEventModel", "GeneralizedArrowUpdate", "StandardEventModel",
    "satisfies", "update", "bisimilar", "isomorphic", "build_F", "build_H", "build_R",
]
