"""Exception hierarchy shared by every ebilab module."""


class EbiError(Exception):
    pass


class MalformedInputError(EbiError, ValueError):
    pass


class ParseError(MalformedInputError):
    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InvalidSwapError(EbiError, ValueError):
    pass


class ScheduleVerificationError(EbiError):
    """A checkpoint disagreed with the evaluator (or the start was not edge-friendly)."""

    def __init__(self, message, prefix):
        super().__init__(f"prefix {prefix}: {message}")
        self.prefix = prefix


class ParameterError(EbiError, ValueError):
    pass


class InfeasibleParametersError(ParameterError):
    pass


class ConstructionError(EbiError, RuntimeError):
    """A builder's internal check failed. This is a bug, never user error."""


class BudgetExceededError(ConstructionError):
    pass


class ShapeTooLargeError(EbiError):
    pass


class PartialResultError(EbiError):
    """Exhaustive search stopped early; ``result`` holds what was covered."""

    def __init__(self, message, result):
        super().__init__(message)
        self.result = result
