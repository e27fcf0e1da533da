"""Exception hierarchy shared by all strandwalk modules."""


class StrandwalkError(Exception):
    """Base class for all errors raised by this package."""


# --- ring-level errors ------------------------------------------------------

class DivisionByZero(StrandwalkError, ZeroDivisionError):
    """Division or inversion by the zero element."""


class PoleAtPoint(StrandwalkError):
    """Evaluation of a rational function at a zero of its denominator."""


class ZeroBase(StrandwalkError):
    """Evaluation of a Laurent polynomial with negative exponents at s = 0."""


class ZeroPolynomial(StrandwalkError):
    """Operation undefined for the zero polynomial (e.g. span)."""


class NotLaurent(StrandwalkError):
    """Rational function is not a Laurent polynomial."""


class NotIntegral(StrandwalkError):
    """Laurent polynomial has a non-integer coefficient where integers are required."""


# --- linear algebra errors --------------------------------------------------

class DimensionMismatch(StrandwalkError):
    """Matrix dimensions incompatible with the requested operation."""


class NotSquare(DimensionMismatch):
    """Square matrix required."""


class Singular(StrandwalkError):
    """Matrix is not invertible over its field of fractions."""


class SingularL(Singular):
    """Bottom-right block of a Schur split is not invertible."""


class SizeMismatch(DimensionMismatch):
    """Row and column index sets of a minor have different sizes."""


class BadGrade(StrandwalkError):
    """Exterior-power or graded-component index out of range."""


# --- braid input errors -----------------------------------------------------

class BraidInputError(StrandwalkError):
    """Base class for braid-word parsing problems."""


class BraidSyntaxError(BraidInputError):
    """Braid text is not whitespace-separated integers."""


class ZeroGenerator(BraidInputError):
    """Letter 0 is not a braid generator."""


class GeneratorOutOfRange(BraidInputError):
    """Letter |g| exceeds strands - 1."""


# --- closure / functor errors -----------------------------------------------

class NotStringLink(StrandwalkError):
    """Closure presentation contains a closed loop, so it is not a string link."""

    def __init__(self, message, cycle=None):
        super().__init__(message)
        self.cycle = cycle  # positions of one offending closure cycle, if found


class GradingViolation(StrandwalkError):
    """Internal consistency failure: an operator mixed weight blocks."""


# --- search / sampling errors -----------------------------------------------

class ExhaustedRetries(StrandwalkError):
    """Rejection sampling failed to produce a string link within its budget."""


class NotFound(StrandwalkError):
    """Exhaustive search ended without a hit; raise the bound before concluding."""
