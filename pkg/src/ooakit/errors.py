"""Exception and warning types shared across the toolkit."""


class OoakitError(Exception):
    """Base class for all toolkit errors."""


class NotPrime(OoakitError):
    """The claimed characteristic is not a prime number."""


class MissingModulus(OoakitError):
    """An extension field was requested without a modulus and none is built in."""


class ReducibleModulus(OoakitError):
    """The supplied modulus polynomial factors over the prime subfield."""


class ZeroInverse(OoakitError):
    """Multiplicative inverse of the zero element was requested."""


class InvalidParams(OoakitError):
    """Parameters violate a documented precondition."""


class InvalidStrength(OoakitError):
    """Strength t is outside 1..n*r."""


class ColumnOutOfRange(OoakitError):
    """A column index does not fit the array's block/depth grid."""


class SymbolOutOfRange(OoakitError):
    """A symbol lies outside the alphabet {0, ..., q-1}."""


class DimensionMismatch(OoakitError):
    """Grid dimensions disagree with the declared block structure."""


class NonDivisibleRows(OoakitError):
    """The row count is not a multiple of q**t, so no multiplicity exists."""


class CombinatorialBlowup(OoakitError):
    """The number of column subsets to check exceeds the configured cap."""


class ScaleExceeded(OoakitError):
    """The instance is larger than the configured desk-scale cap."""


class TooFewPoints(OoakitError):
    """Fewer distinct evaluation points are available than blocks requested."""


class DuplicatePoints(OoakitError):
    """Evaluation points must be pairwise distinct."""


class InexactCoordinate(OoakitError):
    """A point coordinate has no exact base-q expansion of the stated length."""


class NotInvertible(OoakitError):
    """The parameters lie outside the image of the net equivalence."""


class ParseError(OoakitError):
    """Malformed input file; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PointCountWarning(UserWarning):
    """A point set does not have the q**m points expected for net checking."""
