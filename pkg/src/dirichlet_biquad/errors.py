"""Exception and warning types."""


class BiquadError(Exception):
    """Base class for errors raised by this package."""


class NotOddSquarefree(BiquadError, ValueError):
    pass


class BadInput(BiquadError, ValueError):
    pass


class NotFundamental(BiquadError, ValueError):
    pass


class PerfectSquare(BiquadError, ValueError):
    pass


class PreconditionViolated(BiquadError, ValueError):
    pass


class InvalidWitness(BiquadError, ValueError):
    pass


class DegenerateForm(BiquadError, ValueError):
    pass


class DiscriminantMismatch(BiquadError, ValueError):
    pass


class ResourceLimit(BiquadError):
    """A configured size bound (memory, enumeration size) would be exceeded."""


class OracleRangeExceeded(ResourceLimit):
    pass


class HypothesisNotChecked(BiquadError):
    """The caller did not establish the hypothesis an identity depends on."""


class FormulaAnomaly(UserWarning):
    """The 4-rank formula produced a value outside its proven range."""
