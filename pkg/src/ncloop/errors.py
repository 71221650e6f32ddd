"""Exception hierarchy shared by every module of the package."""


class NCLoopError(Exception):
    """Base class. ``code`` mirrors the symbolic error names used in reports."""

    code = "ERROR"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details


class AssociativityViolation(NCLoopError):
    code = "ASSOCIATIVITY_VIOLATION"


class GradingViolation(NCLoopError):
    code = "GRADING_VIOLATION"


class EmptyGenerators(NCLoopError):
    code = "EMPTY_GENERATORS"


class AlgebraMismatch(NCLoopError):
    code = "ALGEBRA_MISMATCH"


class BadParams(NCLoopError):
    code = "BAD_PARAMS"


class TruncationMismatch(NCLoopError):
    code = "TRUNCATION_MISMATCH"


class TruncationTooSmall(NCLoopError):
    code = "TRUNCATION_TOO_SMALL"


class SupportNeedsFreeAlgebra(NCLoopError):
    code = "SUPPORT_NEEDS_FREE_ALGEBRA"


class KTooLarge(NCLoopError):
    code = "K_TOO_LARGE"


class EmptyArgs(NCLoopError):
    code = "EMPTY_ARGS"


class EmptyI(NCLoopError):
    code = "EMPTY_I"


class BadArity(NCLoopError):
    code = "BAD_ARITY"


class BadIndex(NCLoopError):
    code = "BAD_INDEX"


class ParseError(NCLoopError):
    code = "PARSE_ERROR"

    def __init__(self, message, line=1, col=1):
        super().__init__(f"{message} (line {line}, col {col})", line=line, col=col)
        self.line = line
        self.col = col


class UnknownSymbol(ParseError):
    code = "UNKNOWN_SYMBOL"


class Inconsistent(NCLoopError):
    """Two independent routes disagree: this is a bug, not a math outcome."""

    code = "INCONSISTENT"
