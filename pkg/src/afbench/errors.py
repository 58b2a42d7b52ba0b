"""Exception hierarchy shared across the package."""


class AfbenchError(Exception):
    """Base class for all package-specific errors."""


class UnknownArgumentError(AfbenchError):
    """A referenced argument identifier is not part of the framework."""


class PartialLabellingError(AfbenchError):
    """A labelling does not cover every argument of its framework."""


class InconsistentInputError(AfbenchError):
    """A complete labelling was supplied that is missing from the claimed complete set."""


class InconsistentGroundedError(AfbenchError):
    """The supplied grounded labelling fails its own legality check."""


class TooLargeError(AfbenchError):
    """The framework exceeds the brute-force enumeration cap."""


class GraphSyntaxError(AfbenchError):
    """Malformed framework text; carries a line/column position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class NonIntegerIdError(GraphSyntaxError):
    """A node identifier does not parse as a non-negative integer."""


class DanglingEdgeError(GraphSyntaxError):
    """An edge endpoint references a node that was never declared."""


class NoAnswerFoundError(AfbenchError):
    """Free text contains no syntactically valid answer object."""


class AnswerSchemaError(AfbenchError):
    """A JSON value was found but no candidate matches the answer schema."""


class MixedFrameworkError(AfbenchError):
    """Labellings over different argument sets were mixed in one answer."""


class NoIntermediateSetError(AfbenchError):
    """A derivation trace has no intermediate label set to corrupt."""


class InsufficientUniqueFrameworksError(AfbenchError):
    """Deduplication exhausted the space of distinct frameworks."""


class RaggedCandidatesError(AfbenchError):
    """Prediction records do not all carry the same number of candidates."""


class AlignmentError(AfbenchError):
    """Predicted and true acceptance statuses are not aligned."""


class IdMismatchError(AfbenchError):
    """A prediction record references an id absent from the dataset."""


class ConfigError(AfbenchError):
    """Invalid generation or evaluation configuration."""
