class InvalidArgument(ValueError):
    """Raised when an input violates an operation's precondition."""


class OutOfHypothesis(InvalidArgument):
    """Raised when parameters fall outside the range a bound is valid for."""
