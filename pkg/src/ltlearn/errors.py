"""Exception hierarchy shared by every ltlearn module."""


class LtlError(Exception):
    """Base class for all ltlearn errors."""


class FormulaParseError(LtlError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class AlphabetMismatchError(LtlError, ValueError):
    pass


class SampleFormatError(LtlError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ContradictorySampleError(LtlError, ValueError):
    pass


class MalformedModelError(LtlError):
    pass


class StructuralConstraintError(LtlError, ValueError):
    pass


class SolverError(LtlError):
    """The external solver could not be launched or spoke an unexpected protocol."""


class SizeBudgetExhausted(LtlError):
    def __init__(self, max_size, stats=()):
        self.max_size = max_size
        self.stats = list(stats)
        super().__init__(f"no consistent formula of size <= {max_size}")


class LearnTimeout(LtlError):
    def __init__(self, last_completed, stats=()):
        self.last_completed = last_completed
        self.stats = list(stats)
        super().__init__(f"timed out; last completed size bound was {last_completed}")


class InvariantError(LtlError, AssertionError):
    """An internal invariant failed; indicates a bug rather than bad input."""


class GenerationError(LtlError):
    pass
