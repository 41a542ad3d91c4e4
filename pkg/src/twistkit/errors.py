"""Exception hierarchy shared by all twistkit modules."""


class TwistKitError(Exception):
    """Base class for all errors raised by this package."""


class FieldError(TwistKitError):
    """Invalid field specification (non-prime modulus, unknown kind, ...)."""


class FieldMismatchError(TwistKitError):
    """Operands live over different base fields."""


class DimensionMismatchError(TwistKitError):
    """Operand shapes are incompatible."""


class SingularMatrixError(TwistKitError):
    """A matrix that was required to be invertible is singular."""

    def __init__(self, message: str, rank: int):
        super().__init__(f"{message} (rank {rank})")
        self.rank = rank


class UnverifiedCandidateError(TwistKitError):
    """Operation requires a candidate whose verified flag is set."""


class MorphismError(TwistKitError):
    """The given coefficient matrix does not define an algebra morphism."""


class BlockFormError(TwistKitError):
    """Candidate lacks the required triangular block form."""


class SearchSpaceTooLargeError(TwistKitError):
    """Enumeration request exceeds the hard candidate-count guard."""


class SchemaError(TwistKitError):
    """Malformed JSON input."""
