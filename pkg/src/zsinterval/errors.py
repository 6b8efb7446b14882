"""Exception hierarchy.

Everything raised on purpose derives from :class:`DomainError`, so callers
(and the CLI, which maps it to exit status 1) can catch one type.
"""


class DomainError(Exception):
    """Base class for input or computation errors inside the problem domain."""


class ParseError(DomainError, ValueError):
    pass


class ZeroValue(ParseError):
    pass


class ZeroMultiplicity(ParseError):
    pass


class NotZeroSum(DomainError, ValueError):
    pass


class NotPresent(DomainError, ValueError):
    pass


class PreconditionViolated(DomainError, ValueError):
    pass


class BudgetExceeded(DomainError):
    """An exhaustive search was asked to run beyond its configured size."""


class Conflict(DomainError, ValueError):
    """Two congruences cannot hold simultaneously."""


class ArithmeticOverflow(DomainError, OverflowError):
    """An exact quantity left the 128-bit budget."""
