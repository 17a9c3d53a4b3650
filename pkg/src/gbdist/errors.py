"""Exception types shared across the package."""


class GbdistError(Exception):
    """Base class for all package errors."""


class InversionOfZero(GbdistError):
    """Multiplicative inverse of the zero field element was requested."""


class RingMismatch(GbdistError):
    """Operands belong to different rings (field, variables or arity)."""


class InvalidInput(GbdistError):
    """Structurally invalid input (empty generator set, bad file, ...)."""


class DegreeOutOfRange(GbdistError):
    """A degree parameter lies outside its admissible range."""


class FieldEquationsMissing(GbdistError):
    """The ideal does not contain the field equation of every variable."""


class NotSystematic(GbdistError):
    """A word list is not the graph of a map on the first k coordinates."""


class ParameterTooLarge(GbdistError):
    """Requested computation exceeds the desk-scale parameter guard."""


class OddDifference(GbdistError):
    """Consecutive variety counts differ by an odd number (internal bug)."""


class LengthTooSmall(GbdistError):
    """Adversarial instance requires a larger word length."""


class HypothesisViolated(GbdistError):
    """The hypothesis of the binomial growth bound does not hold."""
