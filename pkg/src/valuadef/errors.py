"""Exception types shared across the package."""


class ValuadefError(Exception):
    """Base class for every error raised by this library."""


class DescriptorMismatchError(ValuadefError):
    """Operands belong to different groups or fields."""


class PrecisionInsufficientError(ValuadefError):
    """A predicate cannot be decided from the exactly-known terms."""


class UndefinedValuationError(ValuadefError):
    """The valuation of the exact zero element was requested."""


class ExponentNotDivisibleError(ValuadefError):
    """The leading exponent is not divisible by n in the value group."""


class NotAnNthPowerError(ValuadefError):
    """The leading coefficient is not an n-th power in the coefficient field."""


class PreconditionError(ValuadefError):
    """An operation was called outside its stated precondition."""


class UnsupportedOperationError(ValuadefError):
    """The request falls outside the supported families of this library."""


class ParseError(ValuadefError):
    """Syntax error in an expression or descriptor, with its position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
