"""Exception hierarchy shared by all modules."""


class TaitKneserError(Exception):
    """Base class for every error raised by the package."""


class ExpressionError(TaitKneserError, ValueError):
    """Malformed coordinate expression."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class UnknownIdentifierError(ExpressionError):
    pass


class DomainError(TaitKneserError, ArithmeticError):
    """An expression was evaluated outside the domain of one of its nodes."""

    def __init__(self, message, node=None):
        self.node = node
        super().__init__(message)


class NonFiniteError(TaitKneserError, ArithmeticError):
    """Evaluation overflowed to inf or nan."""


class CurveError(TaitKneserError):
    """A curve violates a local regularity condition at some parameter."""

    def __init__(self, message, t=None):
        self.t = t
        if t is not None:
            message = f"{message} at t={t!r}"
        super().__init__(message)


class FamilyPreconditionError(CurveError):
    """The osculating element of a family does not exist at a parameter."""

    def __init__(self, family, reason, t=None):
        self.family = family
        self.reason = reason
        super().__init__(f"{family}: {reason}", t)


class FamilyMismatchError(TaitKneserError, ValueError):
    pass


class InvalidConicError(TaitKneserError, ValueError):
    pass


class FitError(TaitKneserError):
    """Least-squares conic fit is rank deficient or badly conditioned."""


class BranchCutError(TaitKneserError, ValueError):
    pass


class VertexInsideError(TaitKneserError):
    """A trace has a singular point strictly inside its parameter range."""


class CurveSpecError(TaitKneserError):
    """Malformed or invalid curve-spec file."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
