"""Exception hierarchy shared across the package."""


class RamdepthError(ValueError):
    """Base class for every error raised by this package."""


# -- filtrations -------------------------------------------------------------

class FiltrationError(RamdepthError):
    pass


class InvalidOrders(FiltrationError):
    """Empty order sequence or a non-positive / non-integer entry."""


class InvalidPrime(FiltrationError):
    pass


class NotNonincreasing(FiltrationError):
    pass


class NotDivisibilityChain(FiltrationError):
    pass


class WildPartNotPPower(FiltrationError):
    pass


class TameQuotientNotCoprime(FiltrationError):
    pass


class HigherQuotientNotPPower(FiltrationError):
    pass


class NonterminatingSequence(FiltrationError):
    pass


class IndexBelowMinusOne(FiltrationError):
    pass


class TrivialExtension(FiltrationError):
    pass


class Unramified(FiltrationError):
    pass


# -- piecewise-linear functions ----------------------------------------------

class PiecewiseLinearError(RamdepthError):
    pass


class NegativeArgument(PiecewiseLinearError):
    pass


class NotInvertible(PiecewiseLinearError):
    pass


# -- depth -------------------------------------------------------------------

class DepthError(RamdepthError):
    pass


class NegativeDepth(DepthError):
    pass


class ZeroDepth(DepthError):
    pass


class NonpositiveEpsilon(DepthError):
    pass


# -- catalog -----------------------------------------------------------------

class CatalogError(RamdepthError):
    pass


class MNotCoprimeToP(CatalogError):
    pass


class NonpositiveM(CatalogError):
    pass


class EvenBreak(CatalogError):
    pass


class NTooSmall(CatalogError):
    pass


class UnknownFamily(CatalogError):
    pass


class MissingParam(CatalogError):
    pass


# -- extension spec files ----------------------------------------------------

class ParseError(RamdepthError):
    """A diagnostic anchored at a 1-based (line, column) position."""

    def __init__(self, message: str, line: int, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class SpecSyntaxError(ParseError):
    pass


class UnknownDirective(ParseError):
    pass


class DuplicateDirective(ParseError):
    pass


class ValidationError(ParseError):
    """Raised when well-formed input describes an invalid filtration.

    The underlying error is kept in ``cause`` (and ``__cause__``).
    """

    def __init__(self, message: str, line: int, column: int = 1, cause: Exception | None = None):
        super().__init__(message, line, column)
        self.cause = cause
