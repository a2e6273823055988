"""Exceptions raised by the package."""


class CoxeterError(Exception):
    """Base class for all errors raised here."""


class InvalidMatrix(CoxeterError, ValueError):
    pass


class CapExceeded(CoxeterError):
    """Enumeration found more elements than the requested cap.

    Either the group is infinite or it is larger than the caller allowed.
    """


class MismatchedTypes(CoxeterError, ValueError):
    """Two cosets do not have compatible parabolic data."""


class NotASuperset(CoxeterError, ValueError):
    pass


class InvalidChain(CoxeterError, ValueError):
    """A multistep expression whose containments are malformed."""


class InvalidExpression(CoxeterError, ValueError):
    pass


class JunctionMismatch(CoxeterError, ValueError):
    """Concatenation of expressions or paths whose ends do not meet."""


class UnknownCheckName(CoxeterError, KeyError):
    pass


class ParseError(CoxeterError, ValueError):
    pass
