"""Abstract argumentation engine: labelling semantics, benchmark generation,
and answer scoring."""

from .core import (
    Framework,
    Label,
    Labelling,
    LegalityReport,
    SemanticsKind,
    check_legality,
    classify_labelling,
    defends,
    is_conflict_free,
)
from .graphio import (
    AnswerObject,
    GraphFormat,
    parse_answer,
    parse_framework,
    serialize_answer,
    serialize_framework,
)
from .semantics import (
    CompleteSolution,
    DerivationTrace,
    enumerate_complete,
    filter_semantics,
    oracle_all_labellings,
    solve,
    solve_grounded,
)

__all__ = [
    "Framework", "Label", "Labelling", "LegalityReport", "SemanticsKind",
    "check_legality", "classify_labelling", "defends", "is_conflict_free",
    "AnswerObject", "GraphFormat", "parse_answer", "parse_framework",
    "serialize_answer", "serialize_framework",
    "CompleteSolution", "DerivationTrace", "enumerate_complete",
    "filter_semantics", "oracle_all_labellings", "solve", "solve_grounded",
]

__version__ = "0.1.0"
