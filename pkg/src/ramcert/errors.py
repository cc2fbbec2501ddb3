"""Exception hierarchy shared by all modules."""


class RamcertError(Exception):
    """Base class for every error raised by this package."""


class OrderMismatch(RamcertError, ValueError):
    pass


class DivisionByZero(RamcertError, ZeroDivisionError):
    pass


class CoincidentLines(RamcertError, ValueError):
    pass


class ValidationError(RamcertError, ValueError):
    """Malformed or inconsistent input data (bad JSON, duplicate lines, ...)."""


class LengthMismatch(RamcertError, ValueError):
    pass


class InternalContradiction(RamcertError, RuntimeError):
    pass


class ZeroDirection(RamcertError, ValueError):
    pass


class TooFewLines(RamcertError, ValueError):
    pass


class DuplicateLines(ValidationError):
    pass


class DegenerateInput(RamcertError, ValueError):
    pass


class WrongCount(RamcertError, ValueError):
    pass


class DegenerateTriangle(RamcertError, ValueError):
    pass


class InvalidParameters(RamcertError, ValueError):
    pass


class EmptySingularSet(RamcertError, ValueError):
    pass


class UnknownName(RamcertError, KeyError):
    pass
