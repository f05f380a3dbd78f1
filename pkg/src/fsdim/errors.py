"""Exception types shared across the package."""


class FsdimError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidBase(FsdimError):
    pass


class InvalidDigit(FsdimError):
    pass


class SpecOutOfRange(FsdimError):
    pass


class InsufficientDigits(FsdimError):
    pass


class FstSyntaxError(FsdimError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {col}" if col is not None else "") + ")"
        super().__init__(message + loc)


class MissingTransition(FstSyntaxError):
    pass


class DuplicateTransition(FstSyntaxError):
    pass


class StateOutOfRange(FstSyntaxError):
    pass


class EmptyPattern(FsdimError):
    pass


class InsufficientTraining(FsdimError):
    pass


class InvalidPermutation(FsdimError):
    pass


class AllRowsFlagged(FsdimError):
    pass
