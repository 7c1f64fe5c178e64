"""Exception hierarchy shared by all pinchkit modules."""


class PinchkitError(Exception):
    """Base class for every error raised by pinchkit."""


class DomainError(PinchkitError, ValueError):
    """A parameter lies outside the range where a formula is defined."""


class DimensionMismatch(PinchkitError, ValueError):
    """Array shapes of two inputs do not fit together."""


class InternalInconsistency(PinchkitError, ArithmeticError):
    """Two independent computations of the same quantity disagree."""


class AmbiguousComparison(PinchkitError, ArithmeticError):
    """A floating-point sign decision falls inside the round-off band."""


class NotAProjection(PinchkitError, ValueError):
    """A matrix expected to be an orthogonal projection is not one."""


class HypothesisNotMet(PinchkitError):
    """The Ricci pinching hypothesis fails at the point.

    The evaluated chain is still available as ``record``.
    """

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record


class InvalidStructure(PinchkitError, ValueError):
    """A block structure does not describe the given point data."""


class ClassificationInconsistent(PinchkitError):
    """Equality was detected in the vanishing condition but no block structure was found."""


class CurvatureMismatch(PinchkitError, ValueError):
    """Ambient curvature of inner data does not match the umbilical sphere."""


class InputError(PinchkitError, ValueError):
    """Base class for problems with user-supplied files."""


class SchemaError(InputError):
    """A point-data document violates the JSON schema."""


class SymmetryError(InputError):
    """A shape operator is not symmetric within tolerance."""


class DimensionError(InputError):
    """Declared dimensions disagree with the supplied matrices."""
